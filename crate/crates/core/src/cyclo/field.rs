use super::units::{self, totient, Subgroup};
use super::{cos_element, sin_element, CycloElement};
use crate::error::{Error, Result};
use crate::linalg::{self, Scalar};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

#[derive(Debug)]
struct FieldInner {
    conductor: u64,
    fixing: Subgroup,
}

/// The subfield of Q(ζ_N) fixed by a subgroup H of (Z/NZ)*.
#[derive(Clone)]
pub struct AbelianField(Arc<FieldInner>);

/// Plain description used in reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct FieldDescription {
    pub conductor: u64,
    pub fixing_generators: Vec<u64>,
    pub degree: usize,
    pub totally_real: bool,
}

impl AbelianField {
    pub fn from_subgroup(fixing: Subgroup) -> Self {
        AbelianField(Arc::new(FieldInner {
            conductor: fixing.modulus(),
            fixing,
        }))
    }

    /// Fixed field of the subgroup generated by `gens` in (Z/NZ)*.
    pub fn new(conductor: u64, gens: &[u64]) -> Result<Self> {
        if conductor == 0 {
            return Err(Error::Invalid("conductor must be positive".into()));
        }
        let h = Subgroup::generated(conductor, gens).ok_or_else(|| {
            Error::Invalid(format!("generators must be units modulo {conductor}"))
        })?;
        Ok(Self::from_subgroup(h))
    }

    pub fn rationals() -> Self {
        Self::from_subgroup(Subgroup::full(1))
    }

    /// Q(ζ_n)^+ = Q(cos 2π/n).
    pub fn real_cyclotomic(n: u64) -> Self {
        if n <= 2 {
            return Self::from_subgroup(Subgroup::full(n));
        }
        Self::from_subgroup(Subgroup::generated(n, &[n - 1]).expect("-1 is a unit"))
    }

    /// Q(x), realised as the fixed field of stab(x) in x's ambient field.
    pub fn generated_by(x: &CycloElement) -> Self {
        Self::from_subgroup(x.stabilizer())
    }

    /// Q(sin 2π/n) inside Q(ζ_{4n}).
    pub fn sin_field(n: u64) -> Self {
        Self::generated_by(&sin_element(1, n).lift(4 * n))
    }

    pub fn cos_field(n: u64) -> Self {
        Self::generated_by(&cos_element(1, n))
    }

    pub fn conductor(&self) -> u64 {
        self.0.conductor
    }

    pub fn fixing_subgroup(&self) -> &Subgroup {
        &self.0.fixing
    }

    pub fn degree(&self) -> usize {
        totient(self.conductor()) as usize / self.0.fixing.order()
    }

    pub fn is_totally_real(&self) -> bool {
        let n = self.conductor();
        n <= 2 || self.0.fixing.contains(n - 1)
    }

    pub fn describe(&self) -> FieldDescription {
        FieldDescription {
            conductor: self.conductor(),
            fixing_generators: self.0.fixing.generators(),
            degree: self.degree(),
            totally_real: self.is_totally_real(),
        }
    }

    /// Smallest M | N with Q(ζ_M) ⊇ k, i.e. every u ≡ 1 mod M lies in H.
    pub fn minimal_conductor(&self) -> u64 {
        let n = self.conductor();
        (1..=n)
            .filter(|m| n % m == 0)
            .find(|&m| {
                units::units(n)
                    .into_iter()
                    .filter(|&u| u % m == 1 % m)
                    .all(|u| self.0.fixing.contains(u))
            })
            .expect("m = N always qualifies")
    }

    /// The same field presented inside Q(ζ_M) for M the minimal conductor.
    pub fn at_minimal_conductor(&self) -> AbelianField {
        let m = self.minimal_conductor();
        if m == self.conductor() {
            return self.clone();
        }
        Self::from_subgroup(self.0.fixing.reduce(m))
    }

    /// The fixing subgroup pulled back to (Z/MZ)*, for N | M.
    pub fn lifted_fixing(&self, m: u64) -> Subgroup {
        self.0.fixing.preimage(m)
    }

    /// `other ⊆ self` as subfields of a common cyclotomic field.
    pub fn contains_field(&self, other: &AbelianField) -> bool {
        let l = self.conductor().lcm(&other.conductor());
        units::units(l)
            .into_iter()
            .filter(|&u| self.0.fixing.contains(u % self.conductor()))
            .all(|u| other.0.fixing.contains(u % other.conductor()))
    }

    pub fn contains(&self, x: &CycloElement) -> bool {
        super::field_contains(self, x)
    }

    /// Wraps a value, moving it to the field's conductor.
    pub fn element(&self, x: &CycloElement) -> Result<FieldElement> {
        FieldElement::new(self.clone(), x)
    }

    pub fn rational(&self, q: &BigRational) -> FieldElement {
        FieldElement {
            field: self.clone(),
            value: CycloElement::rational(q, self.conductor()),
        }
    }

    pub fn int(&self, n: i64) -> FieldElement {
        self.rational(&BigRational::from_integer(n.into()))
    }

    pub fn zero(&self) -> FieldElement {
        self.int(0)
    }

    pub fn one(&self) -> FieldElement {
        self.int(1)
    }

    /// Q-basis of the field: independent relative traces of powers of ζ_N.
    pub fn basis(&self) -> Vec<CycloElement> {
        let n = self.conductor();
        let d = self.degree();
        let mut chosen: Vec<CycloElement> = Vec::new();
        let mut rows: Vec<Vec<BigRational>> = Vec::new();
        for j in 0..n as i64 {
            let mut tr = CycloElement::zero(n);
            for &h in self.0.fixing.elements() {
                tr = &tr + &CycloElement::zeta_pow(n, j * h as i64);
            }
            let mut trial = rows.clone();
            trial.push(tr.coefficients());
            if linalg::rank(&trial) == trial.len() {
                rows = trial;
                chosen.push(tr);
                if chosen.len() == d {
                    break;
                }
            }
        }
        debug_assert_eq!(chosen.len(), d);
        chosen
    }

    /// Representatives of the real embeddings (cosets of H), identity first.
    pub fn embedding_reps(&self) -> Vec<u64> {
        self.0.fixing.coset_reps()
    }
}

impl PartialEq for AbelianField {
    fn eq(&self, other: &Self) -> bool {
        if Arc::ptr_eq(&self.0, &other.0) {
            return true;
        }
        if self.conductor() == other.conductor() {
            return self.0.fixing == other.0.fixing;
        }
        self.contains_field(other) && other.contains_field(self)
    }
}

impl Eq for AbelianField {}

impl fmt::Debug for AbelianField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Q(ζ_{})^<{}>",
            self.conductor(),
            self.0
                .fixing
                .generators()
                .iter()
                .map(u64::to_string)
                .collect::<Vec<_>>()
                .join(",")
        )
    }
}

/// An element known to lie in a given abelian field, stored at the field's conductor.
#[derive(Clone)]
pub struct FieldElement {
    field: AbelianField,
    value: CycloElement,
}

impl FieldElement {
    pub fn new(field: AbelianField, x: &CycloElement) -> Result<Self> {
        let value = x.to_conductor(field.conductor()).ok_or(Error::NotInField)?;
        for &h in field.fixing_subgroup().elements() {
            if value.galois_apply(h)? != value {
                return Err(Error::NotInField);
            }
        }
        Ok(FieldElement { field, value })
    }

    pub fn field(&self) -> &AbelianField {
        &self.field
    }

    pub fn value(&self) -> &CycloElement {
        &self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        self.value.as_rational()
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.same_field(other);
        Ok(self.with(&self.value * &other.inverse()?.value))
    }

    pub fn inverse(&self) -> Result<Self> {
        Ok(self.with(self.value.inverse_over(self.field.fixing_subgroup())?))
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        if e < 0 {
            return self.inverse()?.pow(-e);
        }
        Ok(self.with(self.value.pow(e)?))
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        self.with(self.value.scale(q))
    }

    /// Conjugate under ζ ↦ ζ^t (same field, since abelian fields are normal).
    pub fn conjugate(&self, t: u64) -> Result<Self> {
        Ok(self.with(self.value.galois_apply(t)?))
    }

    /// Norm from the field down to Q.
    pub fn norm(&self) -> BigRational {
        self.value.norm_over(self.field.fixing_subgroup())
    }

    /// Smallest positive integer D with D·x integral in Z[ζ_N].
    pub fn denominator(&self) -> &BigInt {
        self.value.denominator()
    }

    fn with(&self, value: CycloElement) -> Self {
        FieldElement {
            field: self.field.clone(),
            value,
        }
    }

    fn same_field(&self, other: &Self) {
        debug_assert!(self.field == other.field, "field mismatch");
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value
    }
}

impl Eq for FieldElement {}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

macro_rules! field_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                self.same_field(rhs);
                self.with((&self.value).$method(&rhs.value))
            }
        }
        impl $trait<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                (&self).$method(rhs)
            }
        }
        impl $trait<FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                self.$method(&rhs)
            }
        }
    };
}

field_binop!(Add, add);
field_binop!(Sub, sub);
field_binop!(Mul, mul);

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.with(-&self.value)
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

impl Scalar for FieldElement {
    fn zero_like(&self) -> Self {
        self.field.zero()
    }
    fn one_like(&self) -> Self {
        self.field.one()
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

/// Coordinates with respect to the power basis 1, g, …, g^{d-1} of a field.
#[derive(Clone)]
pub struct PowerBasis {
    generator: FieldElement,
    powers: Vec<Vec<BigRational>>,
    pivot_rows: Vec<usize>,
    pivot_inverse: Vec<Vec<BigRational>>,
}

impl PowerBasis {
    pub fn new(generator: &FieldElement) -> Result<Self> {
        let field = generator.field();
        let d = field.degree();
        let mut powers = Vec::with_capacity(d);
        let mut acc = CycloElement::one(field.conductor());
        for _ in 0..d {
            powers.push(acc.coefficients());
            acc = &acc * generator.value();
        }
        // independent rows of the φ(N)×d matrix = pivot columns of its transpose
        let mut transpose = powers.clone();
        let pivot_rows = linalg::rref(&mut transpose);
        if pivot_rows.len() < d {
            return Err(Error::NotABasis);
        }
        let square: Vec<Vec<BigRational>> = pivot_rows
            .iter()
            .map(|&r| powers.iter().map(|col| col[r].clone()).collect())
            .collect();
        let pivot_inverse = linalg::inverse(&square).ok_or(Error::NotABasis)?;
        Ok(PowerBasis {
            generator: generator.clone(),
            powers,
            pivot_rows,
            pivot_inverse,
        })
    }

    pub fn generator(&self) -> &FieldElement {
        &self.generator
    }

    pub fn degree(&self) -> usize {
        self.powers.len()
    }

    /// Rational coordinates of x in the power basis.
    pub fn coordinates(&self, x: &FieldElement) -> Result<Vec<BigRational>> {
        let target = x.value().to_conductor(self.generator.field().conductor()).ok_or(Error::NotInField)?;
        let coeffs = target.coefficients();
        let rhs: Vec<&BigRational> = self.pivot_rows.iter().map(|&r| &coeffs[r]).collect();
        let coords: Vec<BigRational> = self
            .pivot_inverse
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&rhs)
                    .fold(BigRational::zero(), |acc, (a, b)| acc + a * *b)
            })
            .collect();
        // every row must agree, not only the pivot rows
        for (r, expected) in coeffs.iter().enumerate() {
            let got = self
                .powers
                .iter()
                .zip(&coords)
                .fold(BigRational::zero(), |acc, (col, c)| acc + &col[r] * c);
            if &got != expected {
                return Err(Error::NotInField);
            }
        }
        Ok(coords)
    }

    /// Integer coordinates if x ∈ Z[g], otherwise `None`.
    pub fn integral_coordinates(&self, x: &FieldElement) -> Result<Option<Vec<BigInt>>> {
        let coords = self.coordinates(x)?;
        if coords.iter().all(|c| c.denom().is_one()) {
            Ok(Some(coords.into_iter().map(|c| c.numer().clone()).collect()))
        } else {
            Ok(None)
        }
    }
}

/// Coordinates of x in Z[generator] when integral; `None` otherwise.
pub fn is_integral(x: &FieldElement, generator: &FieldElement) -> Result<Option<Vec<BigInt>>> {
    PowerBasis::new(generator)?.integral_coordinates(x)
}
