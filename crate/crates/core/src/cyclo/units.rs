//! The unit group (Z/NZ)* and its subgroups.
//!
//! Residues are stored as canonical representatives in `0..N`. For `N = 1`
//! the group is trivial and its only element is `0`.

use num_integer::Integer;
use serde::Serialize;
use std::collections::BTreeSet;

/// Euler's totient.
pub fn totient(n: u64) -> u64 {
    let mut n = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Distinct prime divisors in increasing order.
pub fn prime_divisors(n: u64) -> Vec<u64> {
    let mut n = n;
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && prime_divisors(n) == [n]
}

pub fn units(n: u64) -> Vec<u64> {
    (0..n).filter(|&t| t.gcd(&n) == 1).collect()
}

pub fn mul_mod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, n: u64) -> u64 {
    let mut acc = 1 % n;
    base %= n;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, n);
        }
        base = mul_mod(base, base, n);
        exp >>= 1;
    }
    acc
}

/// Inverse of a unit modulo `n`.
pub fn inv_mod(t: u64, n: u64) -> Option<u64> {
    if n == 1 {
        return Some(0);
    }
    let e = num_integer::Integer::extended_gcd(&(t as i128), &(n as i128));
    if e.gcd != 1 {
        return None;
    }
    Some(e.x.rem_euclid(n as i128) as u64)
}

/// Multiplicative order of a unit.
pub fn unit_order(t: u64, n: u64) -> u64 {
    let one = 1 % n;
    let mut x = t % n;
    let mut k = 1;
    while x != one {
        x = mul_mod(x, t, n);
        k += 1;
    }
    k
}

/// Splits `n = p^a · rest` with `p ∤ rest`.
pub fn split_prime_power(n: u64, p: u64) -> (u32, u64) {
    let mut a = 0;
    let mut rest = n;
    while rest % p == 0 {
        rest /= p;
        a += 1;
    }
    (a, rest)
}

/// A subgroup of (Z/NZ)*, stored as its sorted element list.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Subgroup {
    modulus: u64,
    elements: Vec<u64>,
}

impl Subgroup {
    pub fn trivial(modulus: u64) -> Self {
        Subgroup {
            modulus,
            elements: vec![1 % modulus],
        }
    }

    pub fn full(modulus: u64) -> Self {
        Subgroup {
            modulus,
            elements: units(modulus),
        }
    }

    /// Subgroup generated by the given residues (non-units are rejected).
    pub fn generated(modulus: u64, gens: &[u64]) -> Option<Self> {
        let gens: Vec<u64> = gens.iter().map(|g| g % modulus).collect();
        if gens.iter().any(|g| g.gcd(&modulus) != 1) {
            return None;
        }
        // finite group: closure under right multiplication by generators suffices
        let mut set: BTreeSet<u64> = BTreeSet::new();
        set.insert(1 % modulus);
        let mut frontier = vec![1 % modulus];
        while let Some(x) = frontier.pop() {
            for &g in &gens {
                let y = mul_mod(x, g, modulus);
                if set.insert(y) {
                    frontier.push(y);
                }
            }
        }
        Some(Subgroup {
            modulus,
            elements: set.into_iter().collect(),
        })
    }

    /// Builds a subgroup from an element list that is already known to be closed.
    pub(crate) fn from_closed(modulus: u64, mut elements: Vec<u64>) -> Self {
        elements.sort_unstable();
        elements.dedup();
        Subgroup { modulus, elements }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, t: u64) -> bool {
        self.elements.binary_search(&(t % self.modulus)).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        assert_eq!(self.modulus, other.modulus);
        self.elements.iter().all(|&t| other.contains(t))
    }

    /// Full preimage under the reduction (Z/MZ)* → (Z/NZ)*, for N | M.
    pub fn preimage(&self, m: u64) -> Subgroup {
        assert_eq!(m % self.modulus, 0, "preimage needs N | M");
        let elements = units(m)
            .into_iter()
            .filter(|&u| self.contains(u % self.modulus))
            .collect();
        Subgroup {
            modulus: m,
            elements,
        }
    }

    /// Image under reduction to a divisor `n` of the modulus.
    pub fn reduce(&self, n: u64) -> Subgroup {
        assert_eq!(self.modulus % n, 0);
        Subgroup::from_closed(n, self.elements.iter().map(|&u| u % n).collect())
    }

    /// The product subgroup `self · other`.
    pub fn join(&self, other: &Subgroup) -> Subgroup {
        assert_eq!(self.modulus, other.modulus);
        let mut out = Vec::with_capacity(self.order() * other.order());
        for &a in &self.elements {
            for &b in &other.elements {
                out.push(mul_mod(a, b, self.modulus));
            }
        }
        Subgroup::from_closed(self.modulus, out)
    }

    /// Canonical coset representative (smallest element of `t·self`).
    pub fn coset_rep(&self, t: u64) -> u64 {
        self.elements
            .iter()
            .map(|&h| mul_mod(h, t, self.modulus))
            .min()
            .expect("subgroups are nonempty")
    }

    /// Smallest representatives of all cosets in (Z/NZ)*, in increasing order.
    pub fn coset_reps(&self) -> Vec<u64> {
        let mut reps: BTreeSet<u64> = BTreeSet::new();
        for u in units(self.modulus) {
            reps.insert(self.coset_rep(u));
        }
        reps.into_iter().collect()
    }

    /// A small generating set, useful for display.
    pub fn generators(&self) -> Vec<u64> {
        let mut gens = Vec::new();
        let mut span = Subgroup::trivial(self.modulus);
        for &t in &self.elements {
            if !span.contains(t) {
                gens.push(t);
                span = Subgroup::generated(self.modulus, &gens).expect("elements are units");
            }
        }
        gens
    }
}
