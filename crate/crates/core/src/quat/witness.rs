//! Pure quaternions with a prescribed square.

use super::{QuaternionAlgebra, QuaternionElement};
use crate::cyclo::FieldElement;
use crate::places::sqrt_in_field;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;

/// Rationals n/d with max(|n|, d) ≤ bound, by increasing max(|n|, d).
fn small_rationals(bound: u32) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero()];
    for h in 1..=bound as i64 {
        let mut fresh = Vec::new();
        for d in 1..=h {
            let numerators: Vec<i64> = if d == h { (1..=h).collect() } else { vec![h] };
            for n in numerators {
                if n.gcd(&d) == 1 {
                    fresh.push((n, d));
                }
            }
        }
        for (n, d) in fresh {
            for n in [n, -n] {
                out.push(BigRational::new(BigInt::from(n), BigInt::from(d)));
            }
        }
    }
    out
}

fn verified(x: QuaternionElement, c: &FieldElement) -> Option<QuaternionElement> {
    let sq = x.mul(&x).ok()?;
    (sq.as_scalar() == Some(c)).then_some(x)
}

/// Searches x = x1 i + x2 j + x3 k with x² = a x1² + b x2² − ab x3² = c.
///
/// Closed forms √(c/a)·i, √(c/b)·j, √(−c/ab)·k come first, then a search
/// fixing two coordinates among rationals of height ≤ `bound` and solving
/// for the third. `None` only means nothing was found.
pub fn find_sqrt_witness(alg: &QuaternionAlgebra, c: &FieldElement, bound: u32) -> Option<QuaternionElement> {
    if c.is_zero() || c.field() != alg.field() {
        return None;
    }
    let k = alg.field();
    let (a, b) = (alg.a(), alg.b());
    let ab = a * b;
    let z = k.zero();
    let place = |slot: usize, v: FieldElement, rest: [FieldElement; 2]| -> QuaternionElement {
        let mut coords = [z.clone(), z.clone(), z.clone(), z.clone()];
        coords[slot] = v;
        let others: Vec<usize> = (1..4).filter(|&s| s != slot).collect();
        coords[others[0]] = rest[0].clone();
        coords[others[1]] = rest[1].clone();
        alg.element(coords)
    };
    // coefficient of x_slot² in the square of a pure quaternion
    let weights = [a.clone(), b.clone(), -&ab];

    for slot in 1..4 {
        let target = c.checked_div(&weights[slot - 1]).ok()?;
        if let Some(r) = sqrt_in_field(&target).root() {
            if let Some(x) = verified(place(slot, r.clone(), [z.clone(), z.clone()]), c) {
                return Some(x);
            }
        }
    }

    let values = small_rationals(bound);
    for (n, s) in values.iter().enumerate() {
        for t in &values[..=n] {
            for slot in 1..4 {
                let others: Vec<usize> = (1..4).filter(|&o| o != slot).collect();
                for (u, v) in [(s, t), (t, s)] {
                    if u.is_zero() && v.is_zero() {
                        continue;
                    }
                    let (u, v) = (k.rational(u), k.rational(v));
                    let rest = &weights[others[0] - 1] * &(&u * &u) + &weights[others[1] - 1] * &(&v * &v);
                    let Ok(target) = (c - &rest).checked_div(&weights[slot - 1]) else {
                        continue;
                    };
                    if let Some(r) = sqrt_in_field(&target).root() {
                        if let Some(x) = verified(place(slot, r.clone(), [u, v]), c) {
                            return Some(x);
                        }
                    }
                }
            }
        }
    }
    None
}
