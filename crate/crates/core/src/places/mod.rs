//! Places of abelian fields.
//!
//! A place of k = Q(ζ_N)^H is described purely by group data. Archimedean
//! places are cosets of H (k totally real, so −1 ∈ H already). A finite place
//! over p is a coset t·DH where D is the decomposition group of p in
//! (Z/NZ)*; the coset of t stands for σ_t(𝔓) with 𝔓 the prime at which ζ
//! reduces to the chosen root ω. Local arithmetic at 𝔓 evaluates σ_t⁻¹(x) at ω.

mod local;
mod sqrt;

pub use local::{irreducible, LocalRing};
pub use sqrt::{sqrt_in_field, SqrtOutcome};

use crate::cyclo::units::{self, inv_mod, split_prime_power, Subgroup};
use crate::cyclo::{certified_sign, AbelianField, FieldElement, Sign};
use crate::error::{Error, Result};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;
use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

/// A real embedding x ↦ σ_t(x), identified up to the fixing subgroup.
#[derive(Clone)]
pub struct ArchimedeanPlace {
    field: AbelianField,
    rep: u64,
}

impl ArchimedeanPlace {
    pub fn field(&self) -> &AbelianField {
        &self.field
    }

    /// Smallest exponent in the coset.
    pub fn representative(&self) -> u64 {
        self.rep
    }

    pub fn is_identity(&self) -> bool {
        self.rep == 1 % self.field.conductor()
    }

    pub fn sign(&self, x: &FieldElement) -> Result<Sign> {
        certified_sign(x.value(), self.rep)
    }

    pub fn label(&self) -> String {
        format!("inf_{}", self.rep)
    }
}

impl PartialEq for ArchimedeanPlace {
    fn eq(&self, other: &Self) -> bool {
        self.rep == other.rep && self.field == other.field
    }
}

impl Eq for ArchimedeanPlace {}

impl PartialOrd for ArchimedeanPlace {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ArchimedeanPlace {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rep.cmp(&other.rep)
    }
}

impl fmt::Debug for ArchimedeanPlace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

pub fn archimedean_places(k: &AbelianField) -> Result<Vec<ArchimedeanPlace>> {
    if !k.is_totally_real() {
        return Err(Error::NotTotallyReal);
    }
    Ok(k.fixing_subgroup()
        .coset_reps()
        .into_iter()
        .map(|rep| ArchimedeanPlace {
            field: k.clone(),
            rep,
        })
        .collect())
}

/// A prime of k above p, given as a coset of DH.
#[derive(Clone)]
pub struct FinitePlace {
    field: AbelianField,
    p: u64,
    rep: u64,
    e: u32,
    f: u32,
    g: u32,
    decomposition: Subgroup,
}

impl FinitePlace {
    pub fn field(&self) -> &AbelianField {
        &self.field
    }

    pub fn residue_char(&self) -> u64 {
        self.p
    }

    /// Smallest element of the coset t·DH.
    pub fn coset_rep(&self) -> u64 {
        self.rep
    }

    pub fn ramification_index(&self) -> u32 {
        self.e
    }

    pub fn residue_degree(&self) -> u32 {
        self.f
    }

    /// Number of places of k above p.
    pub fn count_above(&self) -> u32 {
        self.g
    }

    /// D·H, whose cosets index the places above p.
    pub fn decomposition_subgroup(&self) -> &Subgroup {
        &self.decomposition
    }

    /// The place σ_t(self).
    pub fn conjugate(&self, t: u64) -> FinitePlace {
        let n = self.field.conductor();
        let mut out = self.clone();
        out.rep = self.decomposition.coset_rep(units::mul_mod(t % n, self.rep, n));
        out
    }

    /// Tame means p odd and unramified in the field.
    pub fn is_tame(&self) -> bool {
        self.p != 2 && self.e == 1
    }

    pub fn label(&self) -> String {
        format!("P_{{{},{}}}", self.rep, self.p)
    }

    fn key(&self) -> (u64, u64, u64, &[u64]) {
        (
            self.p,
            self.rep,
            self.field.conductor(),
            self.field.fixing_subgroup().elements(),
        )
    }
}

impl PartialEq for FinitePlace {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}

impl Eq for FinitePlace {}

impl Hash for FinitePlace {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.key().hash(state);
    }
}

impl PartialOrd for FinitePlace {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FinitePlace {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl fmt::Debug for FinitePlace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl fmt::Display for FinitePlace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// Serializable summary of a finite place.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PlaceSummary {
    pub p: u64,
    pub coset: u64,
    pub e: u32,
    pub f: u32,
    pub label: String,
}

impl From<&FinitePlace> for PlaceSummary {
    fn from(v: &FinitePlace) -> Self {
        PlaceSummary {
            p: v.p,
            coset: v.rep,
            e: v.e,
            f: v.f,
            label: v.label(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Splitting {
    pub e: u32,
    pub f: u32,
    pub g: u32,
    pub places: Vec<FinitePlace>,
}

/// Decomposition and inertia subgroups of p in (Z/NZ)*.
pub fn decomposition_inertia(n: u64, p: u64) -> (Subgroup, Subgroup) {
    let (a, rest) = split_prime_power(n, p);
    let pa = n / rest;
    let all = units::units(n);
    // kernel of reduction mod N'
    let inertia = Subgroup::from_closed(n, all.iter().copied().filter(|u| u % rest == 1 % rest).collect());
    // Frobenius lift: ≡ p mod N', ≡ 1 mod p^a
    let frob = all
        .iter()
        .copied()
        .find(|u| u % rest == p % rest && (a == 0 || u % pa == 1 % pa))
        .expect("CRT");
    let decomposition = inertia.join(&Subgroup::generated(n, &[frob]).expect("unit"));
    (decomposition, inertia)
}

pub fn splitting_type(k: &AbelianField, p: u64) -> Result<Splitting> {
    if !units::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let n = k.conductor();
    let h = k.fixing_subgroup();
    let (d, i) = decomposition_inertia(n, p);
    let ih = i.join(h);
    let dh = d.join(h);
    let e = (ih.order() / h.order()) as u32;
    let ef = (dh.order() / h.order()) as u32;
    let g = (units::totient(n) as usize / dh.order()) as u32;
    let places = dh
        .coset_reps()
        .into_iter()
        .map(|rep| FinitePlace {
            field: k.clone(),
            p,
            rep,
            e,
            f: ef / e,
            g,
            decomposition: dh.clone(),
        })
        .collect();
    Ok(Splitting {
        e,
        f: ef / e,
        g,
        places,
    })
}

/// The place above p containing σ_t(𝔓).
pub fn place_with_rep(k: &AbelianField, p: u64, t: u64) -> Result<FinitePlace> {
    let n = k.conductor();
    if n > 1 && t.gcd(&n) != 1 {
        return Err(Error::NotAUnit(t, n));
    }
    let split = splitting_type(k, p)?;
    let rep = split.places[0].decomposition.coset_rep(t % n);
    Ok(split
        .places
        .into_iter()
        .find(|v| v.rep == rep)
        .expect("cosets cover the group"))
}

pub fn v_p(x: &BigInt, p: u64) -> u32 {
    if x.is_zero() {
        return u32::MAX;
    }
    let p = BigInt::from(p);
    let mut x = x.abs();
    let mut v = 0;
    while x.is_multiple_of(&p) {
        x /= &p;
        v += 1;
    }
    v
}

/// Completion data at a tame place: ζ ↦ ω in (Z/p^s)[y]/(g).
#[derive(Debug, Clone)]
pub struct PadicContext {
    place: FinitePlace,
    conductor: u64,
    ring: LocalRing,
    omega: local::Elem,
    omega_powers: Vec<local::Elem>,
}

impl PadicContext {
    pub fn new(place: &FinitePlace, s: u32) -> Result<Self> {
        let p = place.p;
        if p == 2 {
            return Err(Error::UnsupportedPlace {
                p,
                reason: "wild (p = 2)",
            });
        }
        if s == 0 {
            return Err(Error::Invalid("precision must be positive".into()));
        }
        // a non-minimal conductor divisible by p is harmless when p is unramified
        let m = if place.field.conductor() % p == 0 {
            place.field.minimal_conductor()
        } else {
            place.field.conductor()
        };
        if m % p == 0 {
            return Err(Error::UnsupportedPlace {
                p,
                reason: "ramified (p divides the conductor)",
            });
        }
        let data = local::residue_data(m, p);
        let ring = LocalRing::new(p, s, data.irr.clone());
        let omega = local::lift_root_of_unity(&ring, &data.omega, m);
        let phi = units::totient(m) as usize;
        let mut omega_powers = Vec::with_capacity(phi);
        let mut acc = ring.one();
        for _ in 0..phi {
            omega_powers.push(acc.clone());
            acc = ring.mul(&acc, &omega);
        }
        Ok(PadicContext {
            place: place.clone(),
            conductor: m,
            ring,
            omega,
            omega_powers,
        })
    }

    pub fn place(&self) -> &FinitePlace {
        &self.place
    }

    pub fn precision(&self) -> u32 {
        self.ring.precision()
    }

    pub fn ring(&self) -> &LocalRing {
        &self.ring
    }

    /// The lifted image of ζ_M, M the working conductor.
    pub fn lifted_root(&self) -> &local::Elem {
        &self.omega
    }

    pub fn residue_field(&self) -> LocalRing {
        self.ring.with_precision(1)
    }

    /// Image of D·x together with D, where D is x's denominator.
    pub fn evaluate(&self, x: &FieldElement) -> Result<(local::Elem, BigInt)> {
        let m = self.conductor;
        let value = if m == x.value().conductor() {
            x.value().clone()
        } else {
            x.value().to_conductor(m).ok_or(Error::NotInField)?
        };
        let t_inv = inv_mod(self.place.rep % m.max(1), m).expect("unit");
        let y = value.galois_apply(t_inv)?;
        let mut acc = self.ring.zero();
        for (c, w) in y.numerators().iter().zip(&self.omega_powers) {
            if !c.is_zero() {
                acc = self.ring.add(&acc, &self.ring.scale(w, c));
            }
        }
        Ok((acc, y.denominator().clone()))
    }

    /// Valuation and residue unit of x, given enough precision.
    pub fn valuation_unit(&self, x: &FieldElement) -> Result<LocalValuation> {
        if x.is_zero() {
            return Err(Error::ZeroElement);
        }
        let p = self.place.p;
        let (image, den) = self.evaluate(x)?;
        let Some(v_num) = self.ring.valuation(&image) else {
            return Err(Error::PrecisionExhausted {
                precision: self.precision(),
                bound: valuation_bound(x, p),
            });
        };
        if v_num >= self.precision() {
            return Err(Error::PrecisionExhausted {
                precision: self.precision(),
                bound: valuation_bound(x, p),
            });
        }
        let v_den = v_p(&den, p);
        let pb = BigInt::from(p);
        let shift = num_traits::pow(pb.clone(), v_num as usize);
        let field = self.residue_field();
        let unit = field.reduce(image.iter().map(|c| c / &shift).collect());
        let den_unit = &den / num_traits::pow(pb.clone(), v_den as usize);
        let den_inv = den_unit
            .mod_floor(&pb)
            .modinv(&pb)
            .expect("unit part of the denominator");
        Ok(LocalValuation {
            v: v_num as i64 - v_den as i64,
            unit: field.scale(&unit, &den_inv),
            residue: field,
            f: self.place.f,
        })
    }
}

/// `x = p^v · u` locally, with `u` reduced into the residue field of Q(ζ_M) at p.
#[derive(Debug, Clone)]
pub struct LocalValuation {
    pub v: i64,
    pub unit: local::Elem,
    residue: LocalRing,
    f: u32,
}

impl LocalValuation {
    pub fn residue_ring(&self) -> &LocalRing {
        &self.residue
    }

    /// Order of the residue field of k at the place.
    pub fn residue_order(&self) -> BigUint {
        num_traits::pow(
            self.residue.p().to_biguint().expect("positive"),
            self.f as usize,
        )
    }

    fn chi(&self, z: &local::Elem) -> i8 {
        let e = (self.residue_order() - 1u32) >> 1;
        let r = self.residue.pow(z, &e);
        if r == self.residue.one() {
            1
        } else {
            debug_assert_eq!(r, self.residue.neg(&self.residue.one()));
            -1
        }
    }

    pub fn unit_is_square(&self) -> bool {
        self.chi(&self.unit) == 1
    }
}

/// v_p(Norm_{k/Q}(D·x)), an upper bound for the valuation of D·x at any place over p.
pub fn valuation_bound(x: &FieldElement, p: u64) -> u32 {
    let d = x.denominator().clone();
    let integral = x.scale(&num_rational::BigRational::from_integer(d));
    let norm = integral.norm();
    debug_assert!(norm.is_integer());
    v_p(&norm.to_integer(), p)
}

pub fn local_valuation_unit(place: &FinitePlace, x: &FieldElement) -> Result<LocalValuation> {
    if x.is_zero() {
        return Err(Error::ZeroElement);
    }
    let bound = valuation_bound(x, place.p);
    let ctx = PadicContext::new(place, bound + 8)?;
    ctx.valuation_unit(x)
}

pub fn local_is_square(place: &FinitePlace, x: &FieldElement) -> Result<bool> {
    let lv = local_valuation_unit(place, x)?;
    Ok(lv.v % 2 == 0 && lv.unit_is_square())
}

pub fn hilbert_symbol_real(a: &FieldElement, b: &FieldElement, place: &ArchimedeanPlace) -> Result<i8> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroElement);
    }
    let negative = place.sign(a)? == Sign::Negative && place.sign(b)? == Sign::Negative;
    Ok(if negative { -1 } else { 1 })
}

/// Tame Hilbert symbol χ((−1)^{αβ} u^β w^{−α}).
pub fn hilbert_symbol_finite(a: &FieldElement, b: &FieldElement, place: &FinitePlace) -> Result<i8> {
    let la = local_valuation_unit(place, a)?;
    let lb = local_valuation_unit(place, b)?;
    let field = &la.residue;
    let (alpha, beta) = (la.v, lb.v);
    let pow_signed = |x: &local::Elem, e: i64| -> local::Elem {
        let base = if e < 0 {
            field.inverse(x).expect("residue units")
        } else {
            x.clone()
        };
        field.pow_u64(&base, e.unsigned_abs())
    };
    let mut z = field.mul(&pow_signed(&la.unit, beta), &pow_signed(&lb.unit, -alpha));
    if (alpha * beta).rem_euclid(2) == 1 {
        z = field.neg(&z);
    }
    Ok(la.chi(&z))
}

/// Decides whether the place splits in k(ζ_m) without local arithmetic, so it
/// also works above 2 and at ramified primes. Returns `None` unless
/// [k(ζ_m) : k] = 2.
pub fn splits_in_cyclotomic_extension(place: &FinitePlace, m: u64) -> Option<bool> {
    let k = &place.field;
    let n = k.conductor();
    let big = n.lcm(&m);
    let hk = k.fixing_subgroup().preimage(big);
    let hl: Vec<u64> = hk
        .elements()
        .iter()
        .copied()
        .filter(|u| u % m == 1 % m)
        .collect();
    if hk.order() != 2 * hl.len() {
        return None;
    }
    let (d, _) = decomposition_inertia(big, place.p);
    Some(
        d.elements()
            .iter()
            .filter(|&&u| hk.contains(u))
            .all(|u| u % m == 1 % m),
    )
}

#[cfg(test)]
mod tests;
