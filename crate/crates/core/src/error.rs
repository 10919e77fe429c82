use thiserror::Error;

/// Errors produced anywhere in the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate element `{0}`")]
    DuplicateElement(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("cycle in covers through `{0}`")]
    CycleInCovers(String),
    #[error("not a bounded lattice: {0}")]
    NotBounded(String),
    #[error("not a lattice: pair ({a}, {b}) has no unique {kind}")]
    NotALattice { kind: &'static str, a: String, b: String },
    #[error("size cap exceeded: {size} > {cap}")]
    SizeCapExceeded { size: usize, cap: usize },
    #[error("syntax error at line {line}: {msg}")]
    SyntaxError { line: usize, msg: String },
    #[error("generator is not a permutation: {0}")]
    NotAPermutation(String),
    #[error("not a lattice automorphism: {0}")]
    NotAnAutomorphism(String),
    #[error("coefficient vector has length {got}, expected {expected}")]
    DimensionMismatch { got: usize, expected: usize },
    #[error("not a measure: residual at element `{0}`")]
    NotAMeasure(String),
    #[error("not a non-normalized measure: violated at subset {0:?}")]
    NotANNMeasure(Vec<String>),
    #[error("measure law violated at subset {0:?}")]
    MeasureViolation(Vec<String>),
    #[error("matrix entry at ({row}, {col}) is not an integer")]
    NonIntegerEntry { row: usize, col: usize },
    #[error("target lattice is not Boolean: {0}")]
    TargetNotBoolean(String),
    #[error("lattice is not Boolean: {0}")]
    NotBoolean(String),
    #[error("enumeration cap exceeded: {size} > {cap}")]
    CapExceeded { size: usize, cap: usize },
    #[error("unknown catalog name `{0}`")]
    UnknownName(String),
}

pub type Result<T> = std::result::Result<T, Error>;
