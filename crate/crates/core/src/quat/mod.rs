//! Quaternion algebras (a,b/k) over abelian fields.

mod matrix;
mod order;
mod witness;


pub use matrix::{MatrixConvention, MatrixOverQuadratic, QuadraticElement};
pub use order::{ClosureCertificate, ClosureFailure, QuaternionOrder};
pub use witness::find_sqrt_witness;

use crate::cyclo::{AbelianField, FieldElement};
use crate::error::{Error, Result};
use num_rational::BigRational;
use std::fmt;
use std::sync::{Arc, OnceLock};

struct AlgebraInner {
    field: AbelianField,
    a: FieldElement,
    b: FieldElement,
    convention: OnceLock<MatrixConvention>,
}

/// The algebra with basis 1, i, j, k = ij and i² = a, j² = b, ij = −ji.
#[derive(Clone)]
pub struct QuaternionAlgebra(Arc<AlgebraInner>);

impl QuaternionAlgebra {
    pub fn new(a: &FieldElement, b: &FieldElement) -> Result<Self> {
        if a.field() != b.field() {
            return Err(Error::FieldMismatch);
        }
        if a.is_zero() || b.is_zero() {
            return Err(Error::Invalid("quaternion algebra parameters must be nonzero".into()));
        }
        Ok(QuaternionAlgebra(Arc::new(AlgebraInner {
            field: a.field().clone(),
            a: a.clone(),
            b: b.clone(),
            convention: OnceLock::new(),
        })))
    }

    pub fn field(&self) -> &AbelianField {
        &self.0.field
    }

    pub fn a(&self) -> &FieldElement {
        &self.0.a
    }

    pub fn b(&self) -> &FieldElement {
        &self.0.b
    }

    /// Decided on first use, since the a = r² case needs a square root search.
    pub fn convention(&self) -> &MatrixConvention {
        self.0
            .convention
            .get_or_init(|| MatrixConvention::choose(&self.0.a, &self.0.b))
    }

    pub fn element(&self, coords: [FieldElement; 4]) -> QuaternionElement {
        QuaternionElement {
            algebra: self.clone(),
            x: coords,
        }
    }

    pub fn scalar(&self, c: &FieldElement) -> QuaternionElement {
        let z = self.field().zero();
        self.element([c.clone(), z.clone(), z.clone(), z])
    }

    pub fn from_ints(&self, coords: [i64; 4]) -> QuaternionElement {
        let k = self.field();
        self.element(coords.map(|c| k.int(c)))
    }

    pub fn one(&self) -> QuaternionElement {
        self.from_ints([1, 0, 0, 0])
    }

    pub fn i(&self) -> QuaternionElement {
        self.from_ints([0, 1, 0, 0])
    }

    pub fn j(&self) -> QuaternionElement {
        self.from_ints([0, 0, 1, 0])
    }

    pub fn k(&self) -> QuaternionElement {
        self.from_ints([0, 0, 0, 1])
    }

    pub fn basis(&self) -> [QuaternionElement; 4] {
        [self.one(), self.i(), self.j(), self.k()]
    }
}

impl PartialEq for QuaternionAlgebra {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.field == other.0.field && self.0.a == other.0.a && self.0.b == other.0.b)
    }
}

impl Eq for QuaternionAlgebra {}

impl fmt::Debug for QuaternionAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {} / {:?})", self.0.a, self.0.b, self.0.field)
    }
}

#[derive(Clone)]
pub struct QuaternionElement {
    algebra: QuaternionAlgebra,
    x: [FieldElement; 4],
}

impl QuaternionElement {
    pub fn algebra(&self) -> &QuaternionAlgebra {
        &self.algebra
    }

    pub fn coords(&self) -> &[FieldElement; 4] {
        &self.x
    }

    pub fn is_zero(&self) -> bool {
        self.x.iter().all(FieldElement::is_zero)
    }

    /// The scalar part if the element lies in k.
    pub fn as_scalar(&self) -> Option<&FieldElement> {
        self.x[1..].iter().all(FieldElement::is_zero).then(|| &self.x[0])
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.algebra == other.algebra {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    fn with(&self, x: [FieldElement; 4]) -> Self {
        QuaternionElement {
            algebra: self.algebra.clone(),
            x,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.with(std::array::from_fn(|n| &self.x[n] + &other.x[n])))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.with(std::array::from_fn(|n| &self.x[n] - &other.x[n])))
    }

    pub fn neg(&self) -> Self {
        self.with(std::array::from_fn(|n| -&self.x[n]))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let a = self.algebra.a();
        let b = self.algebra.b();
        let ab = a * b;
        let [x0, x1, x2, x3] = &self.x;
        let [y0, y1, y2, y3] = &other.x;
        let c0 = x0 * y0 + a * &(x1 * y1) + b * &(x2 * y2) - &ab * &(x3 * y3);
        let c1 = x0 * y1 + x1 * y0 + b * &(x3 * y2 - x2 * y3);
        let c2 = x0 * y2 + x2 * y0 + a * &(x1 * y3 - x3 * y1);
        let c3 = x0 * y3 + x3 * y0 + x1 * y2 - x2 * y1;
        Ok(self.with([c0, c1, c2, c3]))
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        self.with(std::array::from_fn(|n| c * &self.x[n]))
    }

    pub fn scale_rational(&self, q: &BigRational) -> Self {
        self.with(std::array::from_fn(|n| self.x[n].scale(q)))
    }

    pub fn conj(&self) -> Self {
        let [x0, x1, x2, x3] = &self.x;
        self.with([x0.clone(), -x1, -x2, -x3])
    }

    /// Reduced norm x0² − a x1² − b x2² + ab x3².
    pub fn norm(&self) -> FieldElement {
        let a = self.algebra.a();
        let b = self.algebra.b();
        let [x0, x1, x2, x3] = &self.x;
        x0 * x0 - a * &(x1 * x1) - b * &(x2 * x2) + &(a * b) * &(x3 * x3)
    }

    /// Reduced trace 2·x0.
    pub fn trace(&self) -> FieldElement {
        &self.x[0] + &self.x[0]
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = self.algebra.one();
        for _ in 0..e {
            acc = acc.mul(self).expect("same algebra");
        }
        acc
    }

    /// Coordinates as canonical element strings.
    pub fn serialize(&self) -> [String; 4] {
        std::array::from_fn(|n| self.x[n].value().serialize())
    }
}

impl PartialEq for QuaternionElement {
    fn eq(&self, other: &Self) -> bool {
        self.algebra == other.algebra && self.x == other.x
    }
}

impl Eq for QuaternionElement {}

impl fmt::Debug for QuaternionElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for QuaternionElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = ["", "i", "j", "k"];
        let mut first = true;
        for (c, name) in self.x.iter().zip(names) {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if name.is_empty() {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c}·{name}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
