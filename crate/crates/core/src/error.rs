//! Error vocabulary shared by every module.
//!
//! Contract violations are reported through [`Error`]; internal consistency
//! failures (identities the engine re-derives and re-checks) surface as
//! [`Error::Internal`] so callers can distinguish "bad input" from "bug".

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A scalar literal did not parse in the requested field.
    #[error("malformed scalar literal `{0}`")]
    MalformedScalar(String),
    /// A rational literal with denominator zero (or a residue literal whose
    /// denominator vanishes mod p).
    #[error("zero denominator in scalar literal `{0}`")]
    ZeroDenominator(String),
    /// The modulus of a prime field was rejected (p = 2, composite, too big).
    #[error("invalid prime field modulus {0}: {1}")]
    InvalidModulus(u64, String),
    /// Two operands live over different coefficient fields.
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    /// Series division was requested but the numerator is not divisible by
    /// the divisor at the available precision.
    #[error("series not divisible: {0}")]
    NotDivisible(String),
    /// Division by the exact zero series.
    #[error("division by exact zero series")]
    DivideByExactZero,
    /// A polynomial expression was evaluated on the wrong number of arguments.
    #[error("arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    /// Vectors of different lengths were combined.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    /// Generators of a numerical semigroup have gcd > 1.
    #[error("not a numerical semigroup: generator gcd {0} > 1")]
    NotNumerical(u32),
    /// A claimed value set is not closed under addition.
    #[error("value set not closed under addition: {0} + {1} missing")]
    NotClosed(u32, u32),
    /// No certified conductor tail within the examined range.
    #[error("conductor not certified: {0}")]
    ConductorNotCertified(String),
    /// A minimal element was requested but does not exist.
    #[error("no unique minimal nonzero element: {0}")]
    NotUnique(String),
    /// A conductor vector disagrees with the one stored in the semigroup.
    #[error("conductor mismatch: {0}")]
    ConductorMismatch(String),
    /// A curve document failed schema validation.
    #[error("schema error: {0}")]
    SchemaError(String),
    /// A branch parametrization is degenerate (not birational onto its image).
    #[error("degenerate branch {0}: {1}")]
    DegenerateBranch(usize, String),
    /// Two branches coincide, so pairwise intersection numbers are infinite.
    #[error("branches {0} and {1} coincide")]
    CoincidentBranches(usize, usize),
    /// A generator is a unit, so the presented ring is not local.
    #[error("not a local curve ring: {0}")]
    NotLocal(String),
    /// The requested computation exceeded the precision cap without the
    /// truncation window being certified.
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    /// An element required to be a non-zerodivisor vanishes on a branch.
    #[error("not a non-zerodivisor: {0}")]
    NotNzd(String),
    /// Blow-up chains are only defined for unibranch (local chain) curves.
    #[error("blow-up chain requires a single branch, curve has {0}")]
    NotLocalChain(usize),
    /// No superficial element was found within the search bound.
    #[error("no superficial element found within coefficient bound {0}")]
    NoSuperficialFound(u32),
    /// The catalog normal form is not valid over the requested field.
    #[error("unsupported characteristic {0} for catalog family {1}")]
    UnsupportedCharacteristic(u64, String),
    /// The catalog index is outside the admissible range for the family.
    #[error("inadmissible catalog index: {0}")]
    InadmissibleIndex(String),
    /// An identity the engine re-derives failed to hold; this is a bug, not
    /// a property of the input.
    #[error("internal invariant violation: {0}")]
    Internal(String),
}
