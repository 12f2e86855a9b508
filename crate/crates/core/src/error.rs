use thiserror::Error;

/// Errors raised by the algebraic layers.
///
/// Absence results (a non-unit, an element outside `F_p[s]`) are reported as
/// `Option`, not as errors.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    CompositeCharacteristic(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field order p^e = {p}^{e} is too large for table arithmetic")]
    FieldTooLarge { p: u64, e: u32 },
    #[error("modulus must be monic of degree {expected}, got {got:?}")]
    BadModulus { expected: u32, got: Vec<u64> },
    #[error("modulus {0:?} is reducible")]
    ReducibleModulus(Vec<u64>),
    #[error("operands live over different fields")]
    FieldMismatch,
    #[error("operands mix polynomial and Laurent flavors")]
    FlavorMismatch,
    #[error("ring automorphism data inconsistent with flavor: {0}")]
    BadRingAut(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("not in GL_n(R): determinant is not a unit")]
    NotInvertible,
    #[error("index error: {0}")]
    Index(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("no such certificate by this construction: {0}")]
    NoCertificate(String),
    #[error("factor lies in neither factor group: position {0}")]
    NotInFactor(usize),
    #[error("map does not stabilize T in normalized form: {0}")]
    NotTypeShaped(String),
    #[error("realizability unknown for requested type: {0}")]
    RealizabilityUnknown(String),
    #[error("certificate shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("arithmetic invariant failed: {0}")]
    Invariant(String),
    #[error("order bound exceeded: {0}")]
    OrderBound(String),
    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
