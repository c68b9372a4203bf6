use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("order relation has a cycle through `{0}` and `{1}`")]
    Cycle(String, String),
    #[error("relation is not a partial order: {0}")]
    NotPartialOrder(String),
    #[error("index {index} out of range for a carrier of size {size}")]
    OutOfRange { index: usize, size: usize },
    #[error("`{0}` is not a complete lattice")]
    NotCompleteLattice(String),
    #[error("family is not closed under intersections: {0}")]
    NotIntersectionClosed(String),
    #[error("enumeration exceeded the guard of {limit} members (raise it with --max-tensors or RELQ_MAX_TENSORS)")]
    GuardExceeded { limit: usize },
    #[error("finite quantale table would exceed {limit} elements (raise it with --table-limit)")]
    TableTooLarge { limit: usize },
    #[error("carrier mismatch: {0}")]
    CarrierMismatch(String),
    #[error("relation is not a tensor: {0}")]
    NotATensor(String),
    #[error("row slice of `{0}` has no maximum")]
    NoSliceMaximum(String),
    #[error("map is not antitone: {0}")]
    NotAntitone(String),
    #[error("map is not separately continuous: {0}")]
    NotSeparatelyContinuous(String),
    #[error("map is not a preclosure: {0}")]
    NotPreclosure(String),
    #[error("multiplication table is not total: {0}")]
    IncompleteTable(String),
    #[error("pair ({0},{1}) touches a bottom element; relations live on the truncated carriers")]
    BottomPair(String, String),
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("size bound {got} exceeds the supported maximum {max}")]
    BoundExceeded { got: usize, max: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
