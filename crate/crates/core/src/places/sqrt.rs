//! Square roots in abelian fields.
//!
//! Non-squares are certified by a negative real embedding or a local
//! non-square. Otherwise the local roots above a prime with few places are
//! lifted p-adically, the coordinates in a Q-basis are recovered by rational
//! reconstruction, and the candidate is verified exactly.

use super::local::Elem;
use super::{archimedean_places, splitting_type, v_p, FinitePlace, PadicContext};
use crate::cyclo::{AbelianField, CycloElement, FieldElement, Sign};
use crate::error::Result;
use crate::linalg::rational_reconstruction;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone)]
pub enum SqrtOutcome {
    Root(FieldElement),
    /// Certificate naming the place where x is not a square.
    NotSquare(String),
    Unknown,
}

impl SqrtOutcome {
    pub fn root(&self) -> Option<&FieldElement> {
        match self {
            SqrtOutcome::Root(r) => Some(r),
            _ => None,
        }
    }

    pub fn is_square(&self) -> Option<bool> {
        match self {
            SqrtOutcome::Root(_) => Some(true),
            SqrtOutcome::NotSquare(_) => Some(false),
            SqrtOutcome::Unknown => None,
        }
    }
}

const SCAN_PRIMES: usize = 40;
const MAX_PLACES: u32 = 10;
const MAX_BITS: u64 = 8192;

fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    (&n * &n == *q.numer() && &d * &d == *q.denom()).then(|| BigRational::new(n, d))
}

struct Candidate {
    p: u64,
    places: Vec<FinitePlace>,
}

pub fn sqrt_in_field(x: &FieldElement) -> SqrtOutcome {
    match try_sqrt(x) {
        Ok(outcome) => outcome,
        Err(_) => SqrtOutcome::Unknown,
    }
}

fn try_sqrt(x: &FieldElement) -> Result<SqrtOutcome> {
    let k = x.field().clone();
    if x.is_zero() {
        return Ok(SqrtOutcome::Root(x.clone()));
    }
    if let Some(q) = x.as_rational() {
        if let Some(r) = rational_sqrt(&q) {
            return Ok(SqrtOutcome::Root(k.rational(&r)));
        }
    }
    if k.is_totally_real() {
        for place in archimedean_places(&k)? {
            if place.sign(x)? == Sign::Negative {
                return Ok(SqrtOutcome::NotSquare(format!("negative at {}", place.label())));
            }
        }
    }

    let m = k.minimal_conductor();
    let den = x.denominator().clone();
    let integral = x.scale(&BigRational::from_integer(den.clone()));
    let norm = integral.norm().to_integer();
    let mut candidates: Vec<Candidate> = Vec::new();
    let mut scanned = 0;
    let mut p = 2u64;
    while scanned < SCAN_PRIMES {
        p += 1;
        if !crate::cyclo::units::is_prime(p) || m % p == 0 || den.is_multiple_of(&BigInt::from(p)) {
            continue;
        }
        scanned += 1;
        let bound = v_p(&norm, p);
        let split = splitting_type(&k, p)?;
        for place in &split.places {
            let ctx = PadicContext::new(place, bound + 8)?;
            let lv = ctx.valuation_unit(x)?;
            if lv.v % 2 != 0 || !lv.unit_is_square() {
                return Ok(SqrtOutcome::NotSquare(format!("not a local square at {}", place.label())));
            }
        }
        if bound == 0 && split.g <= MAX_PLACES {
            candidates.push(Candidate {
                p,
                places: split.places,
            });
        }
    }
    candidates.sort_by_key(|c| (c.places.len(), c.p));
    let basis: Vec<FieldElement> = k
        .basis()
        .iter()
        .map(|b| k.element(b))
        .collect::<Result<_>>()?;
    for cand in candidates.iter().take(3) {
        if let Some(root) = lift_at(&k, x, &basis, cand)? {
            return Ok(SqrtOutcome::Root(root));
        }
    }
    Ok(SqrtOutcome::Unknown)
}

/// Solves the coordinate system at precision s; `None` if it is not
/// invertible mod p for this basis.
struct ModularSolver {
    modulus: BigInt,
    /// d × rows matrix mapping stacked local values to coordinates.
    left_inverse: Vec<Vec<BigInt>>,
}

impl ModularSolver {
    fn new(columns: &[Vec<BigInt>], p: &BigInt, modulus: &BigInt) -> Option<Self> {
        let d = columns.len();
        let rows = columns[0].len();
        // augmented [A | I] with A rows × d
        let mut m: Vec<Vec<BigInt>> = (0..rows)
            .map(|r| {
                let mut row: Vec<BigInt> = columns.iter().map(|c| c[r].clone()).collect();
                row.extend((0..rows).map(|j| if j == r { BigInt::one() } else { BigInt::zero() }));
                row
            })
            .collect();
        for c in 0..d {
            let pivot = (c..rows).find(|&r| !m[r][c].is_multiple_of(p))?;
            m.swap(c, pivot);
            let inv = m[c][c].modinv(modulus)?;
            for x in m[c].iter_mut() {
                *x = (&*x * &inv).mod_floor(modulus);
            }
            for r in 0..rows {
                if r != c && !m[r][c].is_zero() {
                    let factor = m[r][c].clone();
                    for j in 0..m[r].len() {
                        let delta = &factor * &m[c][j];
                        m[r][j] = (&m[r][j] - delta).mod_floor(modulus);
                    }
                }
            }
        }
        Some(ModularSolver {
            modulus: modulus.clone(),
            left_inverse: m[..d].iter().map(|row| row[d..].to_vec()).collect(),
        })
    }

    fn solve(&self, rhs: &[BigInt]) -> Vec<BigInt> {
        self.left_inverse
            .iter()
            .map(|row| {
                row.iter()
                    .zip(rhs)
                    .fold(BigInt::zero(), |acc, (a, b)| acc + a * b)
                    .mod_floor(&self.modulus)
            })
            .collect()
    }
}

fn local_value(ctx: &PadicContext, x: &FieldElement) -> Result<Elem> {
    let (img, den) = ctx.evaluate(x)?;
    let ring = ctx.ring();
    let inv = den.modinv(ring.modulus()).expect("denominator prime to p");
    Ok(ring.scale(&img, &inv))
}

fn lift_at(
    k: &AbelianField,
    x: &FieldElement,
    basis: &[FieldElement],
    cand: &Candidate,
) -> Result<Option<FieldElement>> {
    let p = cand.p;
    let pb = BigInt::from(p);
    let bits_per_digit = 64 - p.leading_zeros() as u64;
    let mut s = 32u32;
    while s as u64 * bits_per_digit <= MAX_BITS {
        let contexts: Vec<PadicContext> = cand
            .places
            .iter()
            .map(|v| PadicContext::new(v, s))
            .collect::<Result<_>>()?;
        let mut columns: Vec<Vec<BigInt>> = vec![Vec::new(); basis.len()];
        let mut roots: Vec<Elem> = Vec::new();
        for ctx in &contexts {
            for (i, b) in basis.iter().enumerate() {
                columns[i].extend(local_value(ctx, b)?);
            }
            let xv = local_value(ctx, x)?;
            let Some(r) = ctx.ring().sqrt_unit(&xv) else {
                return Ok(None);
            };
            roots.push(r);
        }
        let modulus = contexts[0].ring().modulus().clone();
        let Some(solver) = ModularSolver::new(&columns, &pb, &modulus) else {
            return Ok(None);
        };
        let g = roots.len();
        for pattern in 0u64..(1 << (g - 1)) {
            let mut rhs = Vec::new();
            for (l, (ctx, r)) in contexts.iter().zip(&roots).enumerate() {
                let flip = l > 0 && (pattern >> (l - 1)) & 1 == 1;
                rhs.extend(if flip { ctx.ring().neg(r) } else { r.clone() });
            }
            let coords = solver.solve(&rhs);
            let Some(qs) = coords
                .iter()
                .map(|c| rational_reconstruction(c, &modulus))
                .collect::<Option<Vec<_>>>()
            else {
                continue;
            };
            let mut y = CycloElement::zero(k.conductor());
            for (q, b) in qs.iter().zip(basis) {
                y = &y + &b.value().scale(q);
            }
            let y = k.element(&y)?;
            if &y * &y == *x {
                return Ok(Some(y));
            }
        }
        s *= 2;
    }
    Ok(None)
}
