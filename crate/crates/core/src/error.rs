use std::fmt;

/// Errors reported by the library.
///
/// Operations are total where the underlying mathematics is total (multiset
/// difference saturates, Stirling counts of unrealizable sources are zero);
/// errors are reserved for structural misuse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Two operands live in Weyl algebras of different dimension.
    DimensionMismatch { expected: usize, found: usize },
    /// A permutation's size does not match the object it acts on.
    SizeMismatch { expected: usize, found: usize },
    /// An edge label outside `1..=m` was requested.
    UnknownLabel { label: u32, edge_count: usize },
    /// The operation is defined only for blockless graphs (equivalently,
    /// graphs whose blocks are all singletons).
    BlocksUnsupported,
    /// A monomial of nonzero length was passed where the graph expansion
    /// requires `|alpha| = |beta|`.
    NotLengthZero,
    /// An argument was not a basis monomial `x_i d_j`.
    NotBasisMonomial,
    /// The requested exhaustive computation exceeds the configured budget and
    /// the caller did not opt in to a long run.
    BudgetExceeded { detail: String },
    /// Construction input violated a structural invariant (bad block cover,
    /// vertex id out of range, invalid permutation images, ...).
    Invalid(String),
    /// A text input could not be parsed.
    Parse { line: usize, msg: String },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected n = {expected}, found n = {found}")
            }
            Error::SizeMismatch { expected, found } => {
                write!(f, "size mismatch: expected {expected} elements, found {found}")
            }
            Error::UnknownLabel { label, edge_count } => {
                write!(f, "unknown edge label {label} (graph has {edge_count} edges)")
            }
            Error::BlocksUnsupported => {
                write!(f, "operation requires a blockless graph (singleton blocks only)")
            }
            Error::NotLengthZero => {
                write!(f, "monomial must have length 0 (equal x and d degrees)")
            }
            Error::NotBasisMonomial => write!(f, "argument must be a basis monomial x_i d_j"),
            Error::BudgetExceeded { detail } => write!(f, "budget exceeded: {detail}"),
            Error::Invalid(msg) => write!(f, "invalid input: {msg}"),
            Error::Parse { line, msg } => write!(f, "parse error at line {line}: {msg}"),
        }
    }
}

impl std::error::Error for Error {}
