//! Exact arithmetic in cyclotomic fields Q(ζ_N) and their subfields.
//!
//! An element of Q(ζ_N) is stored in the power basis ζ^0, …, ζ^{φ(N)-1},
//! reduced modulo the cyclotomic polynomial Φ_N, as an integer numerator
//! vector over one positive common denominator. The representation is
//! canonical, so equality is structural once two elements share a
//! conductor. Binary operations lift both sides to the lcm of the
//! conductors; nothing is ever demoted implicitly.

mod field;
mod sign;
pub mod units;

pub use field::{is_integral, AbelianField, FieldDescription, FieldElement, PowerBasis};
pub use sign::{certified_sign, initial_precision_bits, set_initial_precision_bits, sign_at_precision, Sign};
pub use units::Subgroup;

use crate::error::{Error, Result};
use crate::linalg::{self, Scalar, Solution};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};
use units::{mul_mod, totient};

fn phi_cache() -> &'static RwLock<HashMap<u64, Arc<Vec<BigInt>>>> {
    static CACHE: OnceLock<RwLock<HashMap<u64, Arc<Vec<BigInt>>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Coefficients (low degree first) of the N-th cyclotomic polynomial.
pub fn cyclotomic_polynomial(n: u64) -> Arc<Vec<BigInt>> {
    assert!(n >= 1);
    if let Some(p) = phi_cache().read().expect("cache poisoned").get(&n) {
        return p.clone();
    }
    // T^N - 1 divided by Φ_d for every proper divisor d
    let mut poly: Vec<BigInt> = vec![BigInt::zero(); n as usize + 1];
    poly[0] = BigInt::from(-1);
    poly[n as usize] = BigInt::one();
    for d in 1..n {
        if n % d == 0 {
            let divisor = cyclotomic_polynomial(d);
            poly = exact_monic_division(&poly, &divisor);
        }
    }
    let poly = Arc::new(poly);
    phi_cache()
        .write()
        .expect("cache poisoned")
        .entry(n)
        .or_insert_with(|| poly.clone())
        .clone()
}

fn exact_monic_division(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![BigInt::zero(); num.len() - dn];
    for i in (dn..num.len()).rev() {
        let c = rem[i].clone();
        if c.is_zero() {
            continue;
        }
        quot[i - dn] = c.clone();
        for (k, dk) in den.iter().enumerate() {
            rem[i - dn + k] -= &c * dk;
        }
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    quot
}

/// Reduces an integer polynomial modulo Φ_N, returning exactly φ(N) coefficients.
fn reduce_mod_phi(mut poly: Vec<BigInt>, n: u64) -> Vec<BigInt> {
    let phi = cyclotomic_polynomial(n);
    let deg = phi.len() - 1;
    for i in (deg..poly.len()).rev() {
        if poly[i].is_zero() {
            continue;
        }
        let c = std::mem::take(&mut poly[i]);
        for (k, pk) in phi.iter().enumerate().take(deg) {
            poly[i - deg + k] -= &c * pk;
        }
    }
    poly.resize(deg, BigInt::zero());
    poly
}

/// An element of Q(ζ_N).
/// Equality is equality of complex numbers: elements of different conductors
/// compare after lifting to a common one.
#[derive(Clone)]
pub struct CycloElement {
    conductor: u64,
    num: Vec<BigInt>,
    den: BigInt,
}

impl CycloElement {
    fn from_parts(conductor: u64, num: Vec<BigInt>, den: BigInt) -> Self {
        let mut e = CycloElement {
            conductor,
            num,
            den,
        };
        e.normalize();
        e
    }

    fn normalize(&mut self) {
        debug_assert!(!self.den.is_zero());
        if self.den.is_negative() {
            self.den = -&self.den;
            for c in self.num.iter_mut() {
                *c = -&*c;
            }
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if self.num.iter().all(Zero::is_zero) {
            self.den = BigInt::one();
        } else if !g.is_one() {
            self.den /= &g;
            for c in self.num.iter_mut() {
                *c /= &g;
            }
        }
    }

    pub fn zero(conductor: u64) -> Self {
        let deg = totient(conductor) as usize;
        CycloElement {
            conductor,
            num: vec![BigInt::zero(); deg],
            den: BigInt::one(),
        }
    }

    pub fn rational(q: &BigRational, conductor: u64) -> Self {
        let mut e = Self::zero(conductor);
        e.num[0] = q.numer().clone();
        e.den = q.denom().clone();
        e.normalize();
        e
    }

    pub fn from_int(n: i64) -> Self {
        Self::rational(&BigRational::from_integer(n.into()), 1)
    }

    pub fn one(conductor: u64) -> Self {
        Self::rational(&BigRational::one(), conductor)
    }

    /// ζ_N^k for any integer exponent.
    pub fn zeta_pow(n: u64, k: i64) -> Self {
        let e = k.rem_euclid(n as i64) as usize;
        let mut poly = vec![BigInt::zero(); n as usize];
        poly[e] = BigInt::one();
        Self::from_parts(n, reduce_mod_phi(poly, n), BigInt::one())
    }

    /// Builds an element from rational coordinates in the reduced power basis.
    pub fn from_rationals(conductor: u64, coeffs: &[BigRational]) -> Result<Self> {
        let deg = totient(conductor) as usize;
        if coeffs.len() != deg {
            return Err(Error::Invalid(format!(
                "Q(ζ_{conductor}) needs {deg} coordinates, got {}",
                coeffs.len()
            )));
        }
        let den = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        Ok(Self::from_parts(conductor, num, den))
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// Coordinates in the reduced power basis.
    pub fn coefficients(&self) -> Vec<BigRational> {
        self.num
            .iter()
            .map(|c| BigRational::new(c.clone(), self.den.clone()))
            .collect()
    }

    /// Integer numerators over the common denominator.
    pub fn numerators(&self) -> &[BigInt] {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        if self.num.iter().skip(1).all(Zero::is_zero) {
            Some(BigRational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    /// Reinterprets the element in Q(ζ_M) for a multiple M of the conductor.
    pub fn lift(&self, m: u64) -> Self {
        assert_eq!(m % self.conductor, 0, "lift needs N | M");
        if m == self.conductor {
            return self.clone();
        }
        let step = (m / self.conductor) as usize;
        let mut poly = vec![BigInt::zero(); m as usize];
        for (j, c) in self.num.iter().enumerate() {
            poly[j * step] = c.clone();
        }
        Self::from_parts(m, reduce_mod_phi(poly, m), self.den.clone())
    }

    /// Re-expresses the element in Q(ζ_M), lifting or demoting as needed.
    /// Returns `None` when the element does not lie in Q(ζ_M).
    pub fn to_conductor(&self, m: u64) -> Option<Self> {
        if m % self.conductor == 0 {
            return Some(self.lift(m));
        }
        let l = self.conductor.lcm(&m);
        let target = self.lift(l);
        let deg_m = totient(m) as i64;
        let columns: Vec<Vec<BigRational>> = (0..deg_m)
            .map(|j| Self::zeta_pow(m, j).lift(l).coefficients())
            .collect();
        let rows = totient(l) as usize;
        let a: Vec<Vec<BigRational>> = (0..rows)
            .map(|r| columns.iter().map(|c| c[r].clone()).collect())
            .collect();
        match linalg::solve(&a, &target.coefficients()) {
            Solution::Unique(coords) => Self::from_rationals(m, &coords).ok(),
            _ => None,
        }
    }

    /// Lifts a pair to a shared conductor.
    pub fn common(a: &Self, b: &Self) -> (Self, Self) {
        if a.conductor == b.conductor {
            return (a.clone(), b.clone());
        }
        let l = a.conductor.lcm(&b.conductor);
        (a.lift(l), b.lift(l))
    }

    /// Applies ζ_N ↦ ζ_N^t.
    pub fn galois_apply(&self, t: u64) -> Result<Self> {
        let n = self.conductor;
        let t = t % n;
        if t.gcd(&n) != 1 {
            return Err(Error::NotAUnit(t, n));
        }
        if n <= 2 {
            return Ok(self.clone());
        }
        let mut poly = vec![BigInt::zero(); n as usize];
        for (j, c) in self.num.iter().enumerate() {
            poly[mul_mod(j as u64, t, n) as usize] += c;
        }
        Ok(Self::from_parts(n, reduce_mod_phi(poly, n), self.den.clone()))
    }

    /// Galois action by a unit modulo some multiple (or divisor chain) of the conductor.
    /// `t` is read modulo `modulus`, which must be a multiple of the conductor.
    pub fn galois_apply_mod(&self, t: u64, modulus: u64) -> Result<Self> {
        assert_eq!(modulus % self.conductor, 0);
        if t.gcd(&modulus) != 1 {
            return Err(Error::NotAUnit(t, modulus));
        }
        self.galois_apply(t % self.conductor)
    }

    /// Complex conjugate.
    pub fn conj(&self) -> Self {
        if self.conductor <= 2 {
            return self.clone();
        }
        self.galois_apply(self.conductor - 1).expect("-1 is a unit")
    }

    pub fn is_real(&self) -> bool {
        self.conductor <= 2 || self.conj() == *self
    }

    /// { t ∈ (Z/NZ)* : σ_t(x) = x }.
    pub fn stabilizer(&self) -> Subgroup {
        let n = self.conductor;
        if self.as_rational().is_some() {
            return Subgroup::full(n);
        }
        let fixed = units::units(n)
            .into_iter()
            .filter(|&t| self.galois_apply(t).expect("unit") == *self)
            .collect();
        Subgroup::from_closed(n, fixed)
    }

    /// Degree of Q(x) over Q.
    pub fn degree(&self) -> usize {
        totient(self.conductor) as usize / self.stabilizer().order()
    }

    /// Monic minimal polynomial over Q, low degree first.
    pub fn minimal_polynomial(&self) -> Vec<BigRational> {
        let stab = self.stabilizer();
        let n = self.conductor;
        let mut poly: Vec<CycloElement> = vec![CycloElement::one(n)];
        for t in stab.coset_reps() {
            let root = self.galois_apply(t).expect("coset reps are units");
            // poly *= (T - root)
            let mut next = vec![CycloElement::zero(n); poly.len() + 1];
            for (i, c) in poly.iter().enumerate() {
                next[i + 1] = &next[i + 1] + c;
                next[i] = &next[i] - &(c * &root);
            }
            poly = next;
        }
        poly.into_iter()
            .map(|c| c.as_rational().expect("orbit products are rational"))
            .collect()
    }

    /// Product of the conjugates over the cosets of `fixing` (the norm from
    /// the fixed field of `fixing` to Q, when the element lies in it).
    pub fn norm_over(&self, fixing: &Subgroup) -> BigRational {
        assert_eq!(fixing.modulus(), self.conductor);
        let mut acc = CycloElement::one(self.conductor);
        for t in fixing.coset_reps() {
            acc = &acc * &self.galois_apply(t).expect("unit");
        }
        acc.as_rational().expect("norms are rational")
    }

    /// Inverse as the product of the other conjugates over the norm.
    pub fn inverse(&self) -> Result<Self> {
        if let Some(q) = self.as_rational() {
            if q.is_zero() {
                return Err(Error::DivisionByZero);
            }
            return Ok(Self::rational(&q.recip(), self.conductor));
        }
        self.inverse_over(&self.stabilizer())
    }

    /// Inverse of an element known to be fixed by `fixing`; only the
    /// conjugates over the fixed field are multiplied.
    pub fn inverse_over(&self, fixing: &Subgroup) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let identity = fixing.coset_rep(1 % self.conductor);
        let mut acc = CycloElement::one(self.conductor);
        for t in fixing.coset_reps() {
            if t != identity {
                acc = &acc * &self.galois_apply(t).expect("unit");
            }
        }
        let norm = (&acc * self).as_rational().expect("norms are rational");
        Ok(acc.scale(&norm.recip()))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        let (a, b) = Self::common(self, other);
        Ok(&a * &b.inverse()?)
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let mut base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = CycloElement::one(self.conductor);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        Ok(acc)
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        let num = self.num.iter().map(|c| c * q.numer()).collect();
        Self::from_parts(self.conductor, num, &self.den * q.denom())
    }

    /// Canonical text form `[N; q0, q1, ...]`.
    pub fn serialize(&self) -> String {
        let coords: Vec<String> = self
            .coefficients()
            .iter()
            .map(|c| c.to_string())
            .collect();
        format!("[{}; {}]", self.conductor, coords.join(", "))
    }

    /// Floating-point approximation at the embedding ζ ↦ e^{2πi t/N} (display only).
    pub fn approx_at(&self, t: u64) -> (f64, f64) {
        let n = self.conductor as f64;
        let den = big_to_f64(&self.den);
        let mut re = 0.0;
        let mut im = 0.0;
        for (j, c) in self.num.iter().enumerate() {
            let angle = 2.0 * std::f64::consts::PI * ((j as u64 * t) % self.conductor) as f64 / n;
            let c = big_to_f64(c) / den;
            re += c * angle.cos();
            im += c * angle.sin();
        }
        (re, im)
    }
}

fn big_to_f64(x: &BigInt) -> f64 {
    x.to_string().parse().unwrap_or(f64::NAN)
}

impl PartialEq for CycloElement {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            return self.den == other.den && self.num == other.num;
        }
        let (a, b) = Self::common(self, other);
        a.den == b.den && a.num == b.num
    }
}

impl Eq for CycloElement {}

impl fmt::Debug for CycloElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.serialize())
    }
}

impl fmt::Display for CycloElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.serialize())
    }
}

/// cos(2π·numer/denom) = (ζ_M^a + ζ_M^{-a})/2 with a/M the reduced fraction.
pub fn cos_element(numer: i64, denom: u64) -> CycloElement {
    assert!(denom >= 1);
    let g = (numer.unsigned_abs()).gcd(&denom).max(1);
    let m = denom / g;
    let a = (numer / g as i64).rem_euclid(m as i64);
    if m == 1 {
        return CycloElement::from_int(1);
    }
    let sum = &CycloElement::zeta_pow(m, a) + &CycloElement::zeta_pow(m, -a);
    sum.scale(&BigRational::new(1.into(), 2.into()))
}

/// sin(2π·numer/denom), realised as cos(2π(denom − 4·numer)/(4·denom)).
pub fn sin_element(numer: i64, denom: u64) -> CycloElement {
    cos_element(denom as i64 - 4 * numer, 4 * denom)
}

/// Element membership in an abelian field: stab(x) contains the lifted fixing group.
pub fn field_contains(k: &AbelianField, x: &CycloElement) -> bool {
    let stab = x.stabilizer();
    let l = k.conductor().lcm(&x.conductor());
    units::units(l)
        .into_iter()
        .filter(|&u| k.fixing_subgroup().contains(u % k.conductor()))
        .all(|u| stab.contains(u % x.conductor()))
}

macro_rules! binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl $trait<&CycloElement> for &CycloElement {
            type Output = CycloElement;
            fn $method(self, rhs: &CycloElement) -> CycloElement {
                let (a, b) = CycloElement::common(self, rhs);
                $body(a, b)
            }
        }
        impl $trait<CycloElement> for CycloElement {
            type Output = CycloElement;
            fn $method(self, rhs: CycloElement) -> CycloElement {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, |a: CycloElement, b: CycloElement| {
    let num = a
        .num
        .iter()
        .zip(&b.num)
        .map(|(x, y)| x * &b.den + y * &a.den)
        .collect();
    CycloElement::from_parts(a.conductor, num, &a.den * &b.den)
});

binop!(Sub, sub, |a: CycloElement, b: CycloElement| {
    let num = a
        .num
        .iter()
        .zip(&b.num)
        .map(|(x, y)| x * &b.den - y * &a.den)
        .collect();
    CycloElement::from_parts(a.conductor, num, &a.den * &b.den)
});

binop!(Mul, mul, |a: CycloElement, b: CycloElement| {
    let deg = a.num.len();
    let mut prod = vec![BigInt::zero(); 2 * deg - 1];
    for (i, x) in a.num.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.num.iter().enumerate() {
            if !y.is_zero() {
                prod[i + j] += x * y;
            }
        }
    }
    CycloElement::from_parts(
        a.conductor,
        reduce_mod_phi(prod, a.conductor),
        &a.den * &b.den,
    )
});

impl Neg for &CycloElement {
    type Output = CycloElement;
    fn neg(self) -> CycloElement {
        CycloElement {
            conductor: self.conductor,
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

impl Neg for CycloElement {
    type Output = CycloElement;
    fn neg(self) -> CycloElement {
        -&self
    }
}

impl Scalar for CycloElement {
    fn zero_like(&self) -> Self {
        CycloElement::zero(self.conductor)
    }
    fn one_like(&self) -> Self {
        CycloElement::one(self.conductor)
    }
    fn is_zero_scalar(&self) -> bool {
        self.is_zero()
    }
    fn add_s(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_s(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_s(&self, other: &Self) -> Self {
        self * other
    }
    fn div_s(&self, other: &Self) -> Self {
        self.checked_div(other).expect("pivot is nonzero")
    }
}

#[cfg(test)]
mod tests;
