//! Orders given by an explicit basis over R_k = Z[g].

use super::{QuaternionAlgebra, QuaternionElement};
use crate::cyclo::{FieldElement, PowerBasis};
use crate::error::{Error, Result};
use crate::linalg;
use num_bigint::BigInt;
use serde::Serialize;

#[derive(Clone)]
pub struct QuaternionOrder {
    algebra: QuaternionAlgebra,
    basis: [QuaternionElement; 4],
    integers: PowerBasis,
    /// Inverse of the matrix whose columns are the basis coordinates.
    inverse: Vec<Vec<FieldElement>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ClosureFailure {
    Product { left: usize, right: usize, coordinates: [String; 4] },
    Trace { index: usize },
    Norm { index: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosureCertificate {
    pub closed: bool,
    pub products_checked: usize,
    pub failure: Option<ClosureFailure>,
}

impl QuaternionOrder {
    /// `generator` must generate R_k as a ring, i.e. R_k = Z[generator].
    pub fn new(basis: [QuaternionElement; 4], generator: &FieldElement) -> Result<Self> {
        let algebra = basis[0].algebra().clone();
        if basis.iter().any(|e| e.algebra() != &algebra) {
            return Err(Error::AlgebraMismatch);
        }
        if generator.field() != algebra.field() {
            return Err(Error::FieldMismatch);
        }
        let columns: Vec<Vec<FieldElement>> = (0..4)
            .map(|r| (0..4).map(|c| basis[c].coords()[r].clone()).collect())
            .collect();
        let inverse = linalg::inverse(&columns).ok_or(Error::DependentBasis)?;
        Ok(QuaternionOrder {
            integers: PowerBasis::new(generator)?,
            algebra,
            basis,
            inverse,
        })
    }

    /// R_k + R_k i + R_k j + R_k k.
    pub fn standard(algebra: &QuaternionAlgebra, generator: &FieldElement) -> Result<Self> {
        Self::new(algebra.basis(), generator)
    }

    pub fn algebra(&self) -> &QuaternionAlgebra {
        &self.algebra
    }

    pub fn basis(&self) -> &[QuaternionElement; 4] {
        &self.basis
    }

    pub fn integer_generator(&self) -> &FieldElement {
        self.integers.generator()
    }

    /// Coordinates of x over k in the order's basis.
    pub fn coordinates(&self, x: &QuaternionElement) -> Result<[FieldElement; 4]> {
        if x.algebra() != &self.algebra {
            return Err(Error::AlgebraMismatch);
        }
        let k = self.algebra.field();
        Ok(std::array::from_fn(|r| {
            self.inverse[r]
                .iter()
                .zip(x.coords())
                .fold(k.zero(), |acc, (m, c)| acc + m * c)
        }))
    }

    /// For x ∈ O, the 4 × d integer table of coordinates in the basis
    /// (b_r · g^s); `None` if x ∉ O.
    pub fn membership(&self, x: &QuaternionElement) -> Result<Option<Vec<Vec<BigInt>>>> {
        let mut table = Vec::with_capacity(4);
        for c in self.coordinates(x)? {
            match self.integers.integral_coordinates(&c)? {
                Some(row) => table.push(row),
                None => return Ok(None),
            }
        }
        Ok(Some(table))
    }

    pub fn contains(&self, x: &QuaternionElement) -> Result<bool> {
        Ok(self.membership(x)?.is_some())
    }

    pub fn is_integer(&self, c: &FieldElement) -> Result<bool> {
        Ok(self.integers.integral_coordinates(c)?.is_some())
    }

    pub fn norm_one(&self, x: &QuaternionElement) -> Result<bool> {
        Ok(x.norm() == self.algebra.field().one() && self.contains(x)?)
    }

    /// Checks all 16 basis products and the trace and norm of each basis
    /// element; stops at the first failure.
    pub fn closure_check(&self) -> Result<ClosureCertificate> {
        let mut checked = 0;
        let fail = |checked, failure| ClosureCertificate {
            closed: false,
            products_checked: checked,
            failure: Some(failure),
        };
        for (index, e) in self.basis.iter().enumerate() {
            if !self.is_integer(&e.trace())? {
                return Ok(fail(checked, ClosureFailure::Trace { index }));
            }
            if !self.is_integer(&e.norm())? {
                return Ok(fail(checked, ClosureFailure::Norm { index }));
            }
        }
        for left in 0..4 {
            for right in 0..4 {
                let p = self.basis[left].mul(&self.basis[right])?;
                checked += 1;
                if !self.contains(&p)? {
                    let coordinates = p.serialize();
                    return Ok(fail(checked, ClosureFailure::Product { left, right, coordinates }));
                }
            }
        }
        Ok(ClosureCertificate {
            closed: true,
            products_checked: checked,
            failure: None,
        })
    }
}
