//! Exact Gaussian elimination over any field with exact equality.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub trait Scalar: Clone + PartialEq {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero_scalar(&self) -> bool;
    fn add_s(&self, other: &Self) -> Self;
    fn sub_s(&self, other: &Self) -> Self;
    fn mul_s(&self, other: &Self) -> Self;
    /// Caller guarantees `other` is nonzero.
    fn div_s(&self, other: &Self) -> Self;
}

impl Scalar for BigRational {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
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
        self / other
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Solution<S> {
    Unique(Vec<S>),
    Inconsistent,
    /// Consistent, but the columns are dependent.
    Underdetermined,
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref<S: Scalar>(m: &mut [Vec<S>]) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero_scalar()) else {
            continue;
        };
        m.swap(r, p);
        let inv_lead = m[r][c].one_like().div_s(&m[r][c]);
        for x in m[r].iter_mut() {
            *x = x.mul_s(&inv_lead);
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero_scalar() {
                let factor = m[i][c].clone();
                for j in 0..cols {
                    let delta = factor.mul_s(&m[r][j]);
                    m[i][j] = m[i][j].sub_s(&delta);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Solves `A x = b` where `a` is given row-wise (rows may exceed columns).
pub fn solve<S: Scalar>(a: &[Vec<S>], b: &[S]) -> Solution<S> {
    assert_eq!(a.len(), b.len());
    let cols = a.first().map_or(0, |r| r.len());
    let mut aug: Vec<Vec<S>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.last() == Some(&cols) {
        return Solution::Inconsistent;
    }
    if pivots.len() < cols {
        return Solution::Underdetermined;
    }
    Solution::Unique((0..cols).map(|i| aug[i][cols].clone()).collect())
}

/// Inverse of a square matrix, if it exists.
pub fn inverse<S: Scalar>(a: &[Vec<S>]) -> Option<Vec<Vec<S>>> {
    let n = a.len();
    let zero = a.first()?.first()?.zero_like();
    let one = zero.one_like();
    let mut aug: Vec<Vec<S>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { one.clone() } else { zero.clone() }));
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn rank<S: Scalar>(a: &[Vec<S>]) -> usize {
    let mut m = a.to_vec();
    rref(&mut m).len()
}

/// Determinant by Gaussian elimination.
pub fn determinant<S: Scalar>(a: &[Vec<S>]) -> S {
    let n = a.len();
    let mut m = a.to_vec();
    let mut det = m[0][0].one_like();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero_scalar()) else {
            return det.zero_like();
        };
        if p != c {
            m.swap(p, c);
            det = det.zero_like().sub_s(&det);
        }
        det = det.mul_s(&m[c][c]);
        for i in c + 1..n {
            if !m[i][c].is_zero_scalar() {
                let factor = m[i][c].div_s(&m[c][c]);
                for j in c..n {
                    let delta = factor.mul_s(&m[c][j]);
                    m[i][j] = m[i][j].sub_s(&delta);
                }
            }
        }
    }
    det
}

/// Rational reconstruction: finds `n/d ≡ x (mod m)` with `|n|, d ≤ √(m/2)`.
pub fn rational_reconstruction(x: &BigInt, m: &BigInt) -> Option<BigRational> {
    let bound = (m / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (m.clone(), x.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = r1;
        r1 = r2;
        t0 = t1;
        t1 = t2;
    }
    if t1.is_zero() || t1.abs() > bound || !r1.gcd(&t1).is_one() {
        return None;
    }
    Some(BigRational::new(r1, t1))
}
