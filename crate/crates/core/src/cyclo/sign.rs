//! Certified sign of a real cyclotomic number at a real embedding.
//!
//! Exact zero test first; then evaluation in dyadic fixed point with an
//! explicit error radius, doubling the working precision until the
//! magnitude clears the radius. Termination follows from the exact
//! nonzero test.

use super::CycloElement;
use crate::error::{Error, Result};
use num_bigint::{BigInt, Sign as BigSign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use std::sync::atomic::{AtomicU32, Ordering};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

static INITIAL_BITS: AtomicU32 = AtomicU32::new(64);

pub fn initial_precision_bits() -> u32 {
    INITIAL_BITS.load(Ordering::Relaxed)
}

/// Raises the starting precision for sign determination (never below 16 bits).
pub fn set_initial_precision_bits(bits: u32) {
    INITIAL_BITS.store(bits.max(16), Ordering::Relaxed);
}

/// Fixed-point value `mid · 2^-bits` with absolute error at most `rad · 2^-bits`.
#[derive(Debug, Clone)]
struct Ball {
    mid: BigInt,
    rad: BigInt,
}

fn atan_inv(x: u64, bits: u32) -> Ball {
    let x = BigInt::from(x);
    let x2 = &x * &x;
    let mut power = (BigInt::one() << bits) / &x;
    let mut sum = BigInt::zero();
    let mut k: u64 = 0;
    while !power.is_zero() {
        let term = &power / BigInt::from(2 * k + 1);
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        power /= &x2;
        k += 1;
    }
    Ball {
        mid: sum,
        rad: BigInt::from(3 * k + 2),
    }
}

fn pi(bits: u32) -> Ball {
    let a = atan_inv(5, bits);
    let b = atan_inv(239, bits);
    Ball {
        mid: BigInt::from(16) * a.mid - BigInt::from(4) * b.mid,
        rad: BigInt::from(16) * a.rad + BigInt::from(4) * b.rad,
    }
}

/// cos(2π·num/den) as a ball.
fn cos_turn(num: u64, den: u64, pi: &Ball, bits: u32) -> Ball {
    let mut num = num % den;
    let mut den = den;
    // r ∈ [0, 1/2]
    if 2 * num > den {
        num = den - num;
    }
    // r ∈ [0, 1/4], remembering a sign flip
    let mut negate = false;
    if 4 * num > den {
        // 1/2 - num/den = (den - 2 num) / (2 den)
        let new_num = den - 2 * num;
        den *= 2;
        num = new_num;
        negate = true;
    }
    let g = num.gcd(&den).max(1);
    let (num, den) = (num / g, den / g);
    let theta_mid = (BigInt::from(2 * num) * &pi.mid) / BigInt::from(den);
    let theta_rad = (BigInt::from(2 * num) * &pi.rad).div_ceil(&BigInt::from(den)) + 1;

    let one = BigInt::one() << bits;
    let s = (&theta_mid * &theta_mid) >> bits;
    let mut term = one.clone();
    let mut sum = one;
    let mut k: u64 = 1;
    loop {
        term = (&term * &s >> bits) / BigInt::from((2 * k - 1) * (2 * k));
        if term.is_zero() {
            break;
        }
        if k % 2 == 1 {
            sum -= &term;
        } else {
            sum += &term;
        }
        k += 1;
    }
    let rad = BigInt::from(4 * k + 4) + theta_rad;
    Ball {
        mid: if negate { -sum } else { sum },
        rad,
    }
}

/// Sign of σ_t(x) decided at a fixed precision, or `None` if the ball straddles 0.
pub fn sign_at_precision(x: &CycloElement, t: u64, bits: u32) -> Result<Option<Sign>> {
    let y = real_image(x, t)?;
    if y.is_zero() {
        return Ok(Some(Sign::Zero));
    }
    Ok(decide(&y, bits))
}

fn real_image(x: &CycloElement, t: u64) -> Result<CycloElement> {
    let y = x.galois_apply(t)?;
    if !y.is_real() {
        return Err(Error::NotRealAtEmbedding { exponent: t });
    }
    Ok(y)
}

fn decide(y: &CycloElement, bits: u32) -> Option<Sign> {
    let n = y.conductor();
    let pi = pi(bits + 8);
    let mut value = BigInt::zero();
    let mut error = BigInt::zero();
    for (j, c) in y.numerators().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let cos = cos_turn(j as u64, n, &pi, bits + 8);
        value += c * &cos.mid;
        error += c.abs() * &cos.rad;
    }
    // the common denominator is positive and does not affect the sign
    if value.abs() > error {
        Some(match value.sign() {
            BigSign::Minus => Sign::Negative,
            _ => Sign::Positive,
        })
    } else {
        None
    }
}

/// Certified sign of σ_t(x), which must be real.
pub fn certified_sign(x: &CycloElement, t: u64) -> Result<Sign> {
    let y = real_image(x, t)?;
    if y.is_zero() {
        return Ok(Sign::Zero);
    }
    let mut bits = initial_precision_bits();
    loop {
        if let Some(s) = decide(&y, bits) {
            return Ok(s);
        }
        bits *= 2;
    }
}
