//! Arithmetic in (Z/p^s)[y]/(g) for a monic g that is irreducible mod p.
//!
//! With s = 1 this is the finite field F_{p^f}; with larger s it is the
//! truncated ring of integers of the unramified extension of Q_p of degree f.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use crate::cyclo::units::{self, prime_divisors};

pub type Elem = Vec<BigInt>;

#[derive(Debug, Clone)]
pub struct LocalRing {
    p: BigInt,
    s: u32,
    modulus: BigInt,
    /// Monic, low degree first, length f + 1.
    irr: Vec<BigInt>,
}

impl LocalRing {
    pub fn new(p: u64, s: u32, irr: Vec<BigInt>) -> Self {
        let p = BigInt::from(p);
        let modulus = num_traits::pow(p.clone(), s as usize);
        LocalRing {
            p,
            s,
            modulus,
            irr,
        }
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }

    pub fn precision(&self) -> u32 {
        self.s
    }

    pub fn modulus(&self) -> &BigInt {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.irr.len() - 1
    }

    pub fn irr(&self) -> &[BigInt] {
        &self.irr
    }

    pub fn with_precision(&self, s: u32) -> LocalRing {
        LocalRing::new(self.p.to_u64().expect("small prime"), s, self.irr.clone())
    }

    pub fn zero(&self) -> Elem {
        vec![BigInt::zero(); self.degree()]
    }

    pub fn constant(&self, c: &BigInt) -> Elem {
        let mut v = self.zero();
        v[0] = c.mod_floor(&self.modulus);
        v
    }

    pub fn one(&self) -> Elem {
        self.constant(&BigInt::one())
    }

    /// The class of y (for f = 1 this is the constant root of g).
    pub fn gen(&self) -> Elem {
        self.reduce(vec![BigInt::zero(), BigInt::one()])
    }

    pub fn is_zero(&self, x: &Elem) -> bool {
        x.iter().all(Zero::is_zero)
    }

    /// Reduces an arbitrary coefficient vector modulo (p^s, g).
    pub fn reduce(&self, mut v: Vec<BigInt>) -> Elem {
        let f = self.degree();
        for i in (f..v.len()).rev() {
            let c = std::mem::take(&mut v[i]);
            if c.is_zero() {
                continue;
            }
            for j in 0..f {
                v[i - f + j] -= &c * &self.irr[j];
            }
        }
        v.resize(f, BigInt::zero());
        for c in v.iter_mut() {
            *c = c.mod_floor(&self.modulus);
        }
        v
    }

    pub fn add(&self, x: &Elem, y: &Elem) -> Elem {
        x.iter()
            .zip(y)
            .map(|(a, b)| (a + b).mod_floor(&self.modulus))
            .collect()
    }

    pub fn sub(&self, x: &Elem, y: &Elem) -> Elem {
        x.iter()
            .zip(y)
            .map(|(a, b)| (a - b).mod_floor(&self.modulus))
            .collect()
    }

    pub fn neg(&self, x: &Elem) -> Elem {
        x.iter()
            .map(|a| (-a).mod_floor(&self.modulus))
            .collect()
    }

    pub fn scale(&self, x: &Elem, c: &BigInt) -> Elem {
        x.iter()
            .map(|a| (a * c).mod_floor(&self.modulus))
            .collect()
    }

    pub fn mul(&self, x: &Elem, y: &Elem) -> Elem {
        let f = self.degree();
        let mut out = vec![BigInt::zero(); 2 * f - 1];
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        self.reduce(out)
    }

    pub fn pow(&self, x: &Elem, e: &BigUint) -> Elem {
        let mut acc = self.one();
        for i in (0..e.bits()).rev() {
            acc = self.mul(&acc, &acc);
            if e.bit(i) {
                acc = self.mul(&acc, x);
            }
        }
        acc
    }

    pub fn pow_u64(&self, x: &Elem, e: u64) -> Elem {
        self.pow(x, &BigUint::from(e))
    }

    /// Size of the residue field, p^f.
    pub fn residue_order(&self) -> BigUint {
        num_traits::pow(
            self.p.to_biguint().expect("positive"),
            self.degree(),
        )
    }

    pub fn is_unit(&self, x: &Elem) -> bool {
        x.iter().any(|c| !c.is_multiple_of(&self.p))
    }

    /// Inverse of a unit: Fermat in the residue field, then Newton lifting.
    pub fn inverse(&self, x: &Elem) -> Option<Elem> {
        if !self.is_unit(x) {
            return None;
        }
        let field = self.with_precision(1);
        let xr = field.reduce(x.clone());
        let q = field.residue_order();
        let mut u = field.pow(&xr, &(q - 2u32));
        let mut prec = 1;
        let two = self.constant(&BigInt::from(2));
        u = self.reduce(u);
        while prec < self.s {
            // u ← u(2 − x u) doubles the number of correct digits
            u = self.mul(&u, &self.sub(&two, &self.mul(x, &u)));
            prec *= 2;
        }
        Some(u)
    }

    /// Minimum p-adic valuation of the coefficients, or `None` if x ≡ 0 mod p^s.
    pub fn valuation(&self, x: &Elem) -> Option<u32> {
        x.iter()
            .filter(|c| !c.is_zero())
            .map(|c| {
                let mut c = c.clone();
                let mut v = 0;
                while c.is_multiple_of(&self.p) {
                    c /= &self.p;
                    v += 1;
                }
                v
            })
            .min()
    }

    /// Square root in the residue field (s = 1) by Tonelli–Shanks.
    pub fn residue_sqrt(&self, x: &Elem) -> Option<Elem> {
        debug_assert_eq!(self.s, 1);
        if self.is_zero(x) {
            return Some(self.zero());
        }
        let q = self.residue_order();
        let one = self.one();
        let half = (&q - 1u32) >> 1;
        if self.pow(x, &half) != one {
            return None;
        }
        let mut odd = &q - 1u32;
        let mut e = 0u32;
        while !odd.bit(0) {
            odd >>= 1;
            e += 1;
        }
        let z = self
            .enumerate()
            .find(|z| !self.is_zero(z) && self.pow(z, &half) != one)
            .expect("residue fields of odd order have non-squares");
        let mut c = self.pow(&z, &odd);
        let mut t = self.pow(x, &odd);
        let mut r = self.pow(x, &((&odd + 1u32) >> 1));
        let mut m = e;
        while t != one {
            let mut i = 0;
            let mut t2 = t.clone();
            while t2 != one {
                t2 = self.mul(&t2, &t2);
                i += 1;
            }
            let mut b = c.clone();
            for _ in 0..(m - i - 1) {
                b = self.mul(&b, &b);
            }
            r = self.mul(&r, &b);
            c = self.mul(&b, &b);
            t = self.mul(&t, &c);
            m = i;
        }
        Some(r)
    }

    /// Lifts a residue square root of the unit x to full precision by Newton.
    pub fn sqrt_unit(&self, x: &Elem) -> Option<Elem> {
        if self.p == BigInt::from(2) || !self.is_unit(x) {
            return None;
        }
        let field = self.with_precision(1);
        let mut r = self.reduce(field.residue_sqrt(&field.reduce(x.clone()))?);
        let half = (&self.modulus + 1) / 2;
        let mut prec = 1;
        while prec < self.s {
            let inv = self.inverse(&r).expect("root of a unit is a unit");
            r = self.scale(&self.add(&r, &self.mul(x, &inv)), &half);
            prec *= 2;
        }
        Some(r)
    }

    /// All residue-field elements in a fixed order (nonzero ones first by counter).
    pub fn enumerate(&self) -> impl Iterator<Item = Elem> + '_ {
        let p = self.p.clone();
        let f = self.degree();
        let mut counter = BigInt::one();
        std::iter::from_fn(move || {
            let mut n = counter.clone();
            counter += 1;
            let mut v = Vec::with_capacity(f);
            for _ in 0..f {
                let (q, r) = n.div_mod_floor(&p);
                v.push(r);
                n = q;
            }
            if n.is_zero() {
                Some(v)
            } else {
                None
            }
        })
    }
}

mod fp {
    //! Polynomials over F_p with `BigInt` coefficients, low degree first.
    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_traits::{One, Zero};

    pub fn trim(v: &mut Vec<BigInt>) {
        while v.len() > 1 && v.last().is_some_and(Zero::is_zero) {
            v.pop();
        }
    }

    fn inv(a: &BigInt, p: &BigInt) -> BigInt {
        let e = a.extended_gcd(p);
        e.x.mod_floor(p)
    }

    pub fn rem(a: &[BigInt], b: &[BigInt], p: &BigInt) -> Vec<BigInt> {
        let mut r: Vec<BigInt> = a.iter().map(|c| c.mod_floor(p)).collect();
        let mut b: Vec<BigInt> = b.iter().map(|c| c.mod_floor(p)).collect();
        trim(&mut r);
        trim(&mut b);
        let db = b.len() - 1;
        let lead_inv = inv(&b[db], p);
        while r.len() > db && !(r.len() == 1 && r[0].is_zero()) {
            let top = r.len() - 1;
            let c = (&r[top] * &lead_inv).mod_floor(p);
            if !c.is_zero() {
                for (k, bk) in b.iter().enumerate() {
                    r[top - db + k] = (&r[top - db + k] - &c * bk).mod_floor(p);
                }
            }
            if db == 0 {
                return vec![BigInt::zero()];
            }
            r.pop();
            trim(&mut r);
        }
        r
    }

    pub fn gcd(a: &[BigInt], b: &[BigInt], p: &BigInt) -> Vec<BigInt> {
        let mut x = a.to_vec();
        let mut y = b.to_vec();
        trim(&mut x);
        trim(&mut y);
        while !(y.len() == 1 && y[0].is_zero()) {
            let r = rem(&x, &y, p);
            x = std::mem::replace(&mut y, r);
        }
        let lead_inv = inv(x.last().expect("nonempty"), p);
        x.iter().map(|c| (c * &lead_inv).mod_floor(p)).collect()
    }

    pub fn is_constant_one(v: &[BigInt]) -> bool {
        v.len() == 1 && v[0].is_one()
    }
}

/// Rabin's irreducibility test for a monic polynomial over F_p.
fn is_irreducible(g: &[BigInt], p: u64) -> bool {
    let f = g.len() - 1;
    if f == 1 {
        return true;
    }
    let ring = LocalRing::new(p, 1, g.to_vec());
    let pb = BigInt::from(p);
    let pu = BigUint::from(p);
    let y = ring.gen();
    // frob[k] = y^{p^k}
    let mut frob = vec![y.clone()];
    for k in 1..=f {
        let next = ring.pow(&frob[k - 1], &pu);
        frob.push(next);
    }
    if frob[f] != y {
        return false;
    }
    for r in prime_divisors(f as u64) {
        let h = ring.sub(&frob[f / r as usize], &y);
        let d = fp::gcd(g, &h, &pb);
        if !fp::is_constant_one(&d) {
            return false;
        }
    }
    true
}

/// The first monic irreducible of degree f over F_p in counting order.
pub fn irreducible(p: u64, f: usize) -> Vec<BigInt> {
    if f == 1 {
        return vec![BigInt::zero(), BigInt::one()];
    }
    let pb = BigInt::from(p);
    let mut counter = BigInt::one();
    loop {
        let mut n = counter.clone();
        counter += 1;
        let mut g = Vec::with_capacity(f + 1);
        for _ in 0..f {
            let (q, r) = n.div_mod_floor(&pb);
            g.push(r);
            n = q;
        }
        g.push(BigInt::one());
        if g[0].is_zero() {
            continue;
        }
        if is_irreducible(&g, p) {
            return g;
        }
    }
}

/// An element of exact order n in the residue field (n | p^f − 1).
fn element_of_order(field: &LocalRing, n: u64) -> Elem {
    let q = field.residue_order();
    let cofactor = (&q - 1u32) / BigUint::from(n);
    let one = field.one();
    let primes = prime_divisors(n);
    field
        .enumerate()
        .filter(|z| !field.is_zero(z))
        .map(|z| field.pow(&z, &cofactor))
        .find(|h| {
            primes
                .iter()
                .all(|&r| field.pow_u64(h, n / r) != one)
        })
        .expect("the multiplicative group is cyclic of order divisible by n")
}

/// Residue data for the completion of Q(ζ_N) at p ∤ N: an irreducible of
/// degree ord_N(p) and the reduction of ζ.
#[derive(Debug, Clone)]
pub struct ResidueData {
    pub irr: Vec<BigInt>,
    pub omega: Elem,
}

pub fn residue_data(n: u64, p: u64) -> ResidueData {
    static CACHE: OnceLock<Mutex<HashMap<(u64, u64), ResidueData>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(d) = cache.lock().expect("cache lock").get(&(n, p)) {
        return d.clone();
    }
    let f = if n == 1 { 1 } else { units::unit_order(p % n, n) as usize };
    let irr = irreducible(p, f);
    let field = LocalRing::new(p, 1, irr.clone());
    let omega = if n == 1 {
        field.one()
    } else {
        element_of_order(&field, n)
    };
    let data = ResidueData { irr, omega };
    cache
        .lock()
        .expect("cache lock")
        .insert((n, p), data.clone());
    data
}

/// Newton-lifts a residue root of x^n − 1 to precision s.
pub fn lift_root_of_unity(ring: &LocalRing, omega: &Elem, n: u64) -> Elem {
    let mut w = ring.reduce(omega.clone());
    let one = ring.one();
    let nb = BigInt::from(n);
    let mut prec = 1;
    while prec < ring.precision() {
        let value = ring.sub(&ring.pow_u64(&w, n), &one);
        let deriv = ring.scale(&ring.pow_u64(&w, n - 1), &nb);
        let inv = ring.inverse(&deriv).expect("x^n − 1 is separable mod p");
        w = ring.sub(&w, &ring.mul(&value, &inv));
        prec *= 2;
    }
    debug_assert_eq!(ring.pow_u64(&w, n), one);
    w
}
