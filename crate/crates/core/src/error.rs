use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands live over different generator tables")]
    TableMismatch,
    #[error("duplicate generator {0}")]
    DuplicateGenerator(String),
    #[error("generator table is limited to {max} generators, got {got}")]
    TooManyGenerators { max: usize, got: usize },
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("not a permutation: {0:?}")]
    NotAPermutation(Vec<usize>),
    #[error("element is not invertible: {0}")]
    NotInvertible(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("format mismatch: ({0}|{1}) vs ({2}|{3})")]
    FormatMismatch(usize, usize, usize, usize),
    #[error("supermatrix is not parity-homogeneous")]
    Inhomogeneous,
    #[error("entry has odd parity where an even entry is required")]
    OddEntry,
    #[error("matrix is not of Q(n) shape")]
    NotQueerShape,
    #[error("invalid algebra spec `{input}`: {reason}; expected one of {grammar}")]
    InvalidSpec {
        input: String,
        reason: String,
        grammar: &'static str,
    },
    #[error("operator tuple mixes matrices and differential operators")]
    MixedOperatorKinds,
    #[error("odd operators are not supported here")]
    OddOperator,
    #[error("differential operators live on different domains")]
    DomainMismatch,
    #[error("permutation enumeration capped at r <= {cap}, got {got}")]
    EnumerationCap { cap: usize, got: usize },
    #[error("scan of {0} requires the long-running flag")]
    LongRunningGated(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
