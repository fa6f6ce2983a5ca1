use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid word {0:?}: only '+' and '-' are allowed")]
    InvalidWord(String),

    #[error("vertex {0} has no predecessor")]
    NoPredecessor(i32),

    #[error("vertex {0} has no successor")]
    NoSuccessor(i32),

    #[error("label {0} is not a vertex of the type-A quiver on {1} vertices")]
    UnknownLabel(i32, usize),

    #[error("unknown vertex label {0:?}")]
    UnknownVertex(String),

    #[error("quiver is not acyclic")]
    NotAcyclic,

    #[error("truncation length {0} is below 2; the ideal would not be admissible")]
    InvalidTruncation(usize),

    #[error("not a based subalgebra: {0}")]
    NotBased(String),

    #[error("subspace is not closed under multiplication")]
    NotClosed,

    #[error("element is not an idempotent of the subalgebra")]
    NotIdempotent,

    #[error("invalid separable pair: {0}")]
    InvalidSeparable(String),

    #[error("invalid split data: {0}")]
    InvalidSplit(String),

    #[error("quiver is not of type A ({0}); build subalgebras with build_separable/build_split directly")]
    NotTypeA(String),

    #[error("ambient algebra is not hereditary; split presentations need I = 0")]
    NotHereditary,

    #[error("presentation check failed: {0}")]
    PresentationMismatch(String),

    #[error("unsupported presentation degree: {0}")]
    UnsupportedPresentation(String),

    #[error("certificate rejected: {0}")]
    CertificateRejected(String),

    #[error("invalid index configuration: {0}")]
    InvalidIndices(String),

    #[error("soundness violation on word {word}: {detail}")]
    Soundness { word: String, detail: String },

    #[error("max_n must be at least 2, got {0}")]
    InvalidBound(usize),

    #[error("cannot start worker pool: {0}")]
    Workers(String),
}

pub type Result<T> = std::result::Result<T, Error>;
