use thiserror::Error;

/// Errors surfaced by the exact-arithmetic layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("element is not real at the embedding ζ ↦ ζ^{exponent}")]
    NotRealAtEmbedding { exponent: u64 },
    #[error("{0} is not a unit modulo {1}")]
    NotAUnit(u64, u64),
    #[error("powers of the generator do not form a basis")]
    NotABasis,
    #[error("element does not lie in the field")]
    NotInField,
    #[error("field is not totally real")]
    NotTotallyReal,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is too small (need p >= 5)")]
    TooSmall(u64),
    #[error("unsupported place over {p}: {reason}")]
    UnsupportedPlace { p: u64, reason: &'static str },
    #[error("zero element has no valuation")]
    ZeroElement,
    #[error("precision exhausted at p^{precision} (norm bound {bound})")]
    PrecisionExhausted { precision: u32, bound: u32 },
    #[error("quaternion elements belong to different algebras")]
    AlgebraMismatch,
    #[error("fields differ")]
    FieldMismatch,
    #[error("{0} is a square in the base field, so k(√c) is not quadratic")]
    NotQuadratic(String),
    #[error("quaternion basis is linearly dependent")]
    DependentBasis,
    #[error("no matrix model is available for this algebra")]
    MatrixImageUnavailable,
    #[error("could not fully factor {0}")]
    FactorizationIncomplete(String),
    #[error("ramification data violates the parity law ({0} ramified places)")]
    ParityViolation(usize),
    #[error("parse error at offset {offset}: expected {}, found {found}", expected.join(" or "))]
    Parse {
        /// 1-based byte offset of the offending token.
        offset: usize,
        expected: Vec<String>,
        found: String,
    },
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
