//! 2×2 matrix models over k(√d), with √d kept formal.

use super::{QuaternionAlgebra, QuaternionElement};
use crate::cyclo::FieldElement;
use crate::error::{Error, Result};
use crate::places::sqrt_in_field;
use num_rational::BigRational;
use num_traits::Signed;
use serde::Serialize;
use std::fmt;

/// u + v√d.
#[derive(Clone, PartialEq, Eq)]
pub struct QuadraticElement {
    pub u: FieldElement,
    pub v: FieldElement,
    d: FieldElement,
}

impl QuadraticElement {
    pub fn new(u: FieldElement, v: FieldElement, d: &FieldElement) -> Self {
        QuadraticElement { u, v, d: d.clone() }
    }

    pub fn from_base(u: FieldElement, d: &FieldElement) -> Self {
        let v = d.field().zero();
        QuadraticElement::new(u, v, d)
    }

    pub fn radicand(&self) -> &FieldElement {
        &self.d
    }

    pub fn zero(d: &FieldElement) -> Self {
        Self::from_base(d.field().zero(), d)
    }

    pub fn add(&self, o: &Self) -> Self {
        QuadraticElement::new(&self.u + &o.u, &self.v + &o.v, &self.d)
    }

    pub fn sub(&self, o: &Self) -> Self {
        QuadraticElement::new(&self.u - &o.u, &self.v - &o.v, &self.d)
    }

    pub fn mul(&self, o: &Self) -> Self {
        let u = &self.u * &o.u + &self.d * &(&self.v * &o.v);
        let v = &self.u * &o.v + &self.v * &o.u;
        QuadraticElement::new(u, v, &self.d)
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        QuadraticElement::new(c * &self.u, c * &self.v, &self.d)
    }

    pub fn is_zero(&self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }
}

impl fmt::Debug for QuadraticElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.v.is_zero() {
            write!(f, "{}", self.u)
        } else {
            write!(f, "{} + {}·√{}", self.u, self.v, self.d)
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MatrixOverQuadratic {
    pub entries: [[QuadraticElement; 2]; 2],
}

impl MatrixOverQuadratic {
    fn from_fn(f: impl Fn(usize, usize) -> QuadraticElement) -> Self {
        MatrixOverQuadratic {
            entries: std::array::from_fn(|r| std::array::from_fn(|c| f(r, c))),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::from_fn(|r, c| self.entries[r][c].add(&o.entries[r][c]))
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::from_fn(|r, c| {
            self.entries[r][0]
                .mul(&o.entries[0][c])
                .add(&self.entries[r][1].mul(&o.entries[1][c]))
        })
    }

    pub fn scale(&self, s: &FieldElement) -> Self {
        Self::from_fn(|r, c| self.entries[r][c].scale(s))
    }

    pub fn determinant(&self) -> QuadraticElement {
        let e = &self.entries;
        e[0][0].mul(&e[1][1]).sub(&e[0][1].mul(&e[1][0]))
    }

    pub fn trace(&self) -> QuadraticElement {
        self.entries[0][0].add(&self.entries[1][1])
    }
}

/// Which 2×2 model an algebra uses.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MatrixConvention {
    /// a = −r²: i ↦ [[0, r], [−r, 0]], j ↦ diag(√b, −√b).
    NegativeSquare {
        #[serde(serialize_with = "ser_rational")]
        r: BigRational,
    },
    /// a = b = c: i ↦ diag(√c, −√c), j ↦ [[0, √c], [√c, 0]].
    EqualParameters,
    /// a = r² with r ∈ k: i ↦ diag(r, −r), j ↦ [[0, 1], [b, 0]]; split over k itself.
    SquareA {
        #[serde(skip)]
        r: FieldElement,
    },
    Unavailable,
}

fn ser_rational<S: serde::Serializer>(q: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

impl MatrixConvention {
    pub(super) fn choose(a: &FieldElement, b: &FieldElement) -> Self {
        if let Some(q) = a.as_rational() {
            if q.is_negative() {
                let m = -q;
                let (n, d) = (m.numer().sqrt(), m.denom().sqrt());
                if &(&n * &n) == m.numer() && &(&d * &d) == m.denom() {
                    return MatrixConvention::NegativeSquare {
                        r: BigRational::new(n, d),
                    };
                }
            }
        }
        if a == b {
            return MatrixConvention::EqualParameters;
        }
        if let Some(r) = sqrt_in_field(a).root() {
            return MatrixConvention::SquareA { r: r.clone() };
        }
        MatrixConvention::Unavailable
    }
}

impl QuaternionAlgebra {
    /// Images of i and j.
    fn generator_images(&self) -> Result<(MatrixOverQuadratic, MatrixOverQuadratic)> {
        let k = self.field();
        let (a, b) = (self.a(), self.b());
        let zero = k.zero();
        let q = |u: &FieldElement, v: &FieldElement, d: &FieldElement| QuadraticElement::new(u.clone(), v.clone(), d);
        let m = |e: [[QuadraticElement; 2]; 2]| MatrixOverQuadratic { entries: e };
        match self.convention() {
            MatrixConvention::NegativeSquare { r } => {
                let r = k.rational(r);
                let one = k.one();
                let i = m([
                    [q(&zero, &zero, b), q(&r, &zero, b)],
                    [q(&-&r, &zero, b), q(&zero, &zero, b)],
                ]);
                let j = m([
                    [q(&zero, &one, b), q(&zero, &zero, b)],
                    [q(&zero, &zero, b), q(&zero, &-&one, b)],
                ]);
                Ok((i, j))
            }
            MatrixConvention::EqualParameters => {
                let one = k.one();
                let i = m([
                    [q(&zero, &one, a), q(&zero, &zero, a)],
                    [q(&zero, &zero, a), q(&zero, &-&one, a)],
                ]);
                let j = m([
                    [q(&zero, &zero, a), q(&zero, &one, a)],
                    [q(&zero, &one, a), q(&zero, &zero, a)],
                ]);
                Ok((i, j))
            }
            MatrixConvention::SquareA { r } => {
                let one = k.one();
                let i = m([
                    [q(r, &zero, b), q(&zero, &zero, b)],
                    [q(&zero, &zero, b), q(&-r, &zero, b)],
                ]);
                let j = m([
                    [q(&zero, &zero, b), q(&one, &zero, b)],
                    [q(b, &zero, b), q(&zero, &zero, b)],
                ]);
                Ok((i, j))
            }
            MatrixConvention::Unavailable => Err(Error::MatrixImageUnavailable),
        }
    }

    /// Radicand of the quadratic extension the model lives over.
    pub fn splitting_radicand(&self) -> &FieldElement {
        match self.convention() {
            MatrixConvention::EqualParameters => self.a(),
            _ => self.b(),
        }
    }
}

impl QuaternionElement {
    pub fn matrix_image(&self) -> Result<MatrixOverQuadratic> {
        let alg = self.algebra();
        let (i, j) = alg.generator_images()?;
        let d = alg.splitting_radicand();
        let k = i.mul(&j);
        let one = QuadraticElement::from_base(alg.field().one(), d);
        let zero = QuadraticElement::zero(d);
        let id = MatrixOverQuadratic {
            entries: [[one.clone(), zero.clone()], [zero, one]],
        };
        let [x0, x1, x2, x3] = self.coords();
        Ok(id
            .scale(x0)
            .add(&i.scale(x1))
            .add(&j.scale(x2))
            .add(&k.scale(x3)))
    }
}
