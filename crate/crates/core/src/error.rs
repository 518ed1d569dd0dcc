use alloc::string::String;
use alloc::vec::Vec;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("dimension: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("degenerate: {0}")]
    Degenerate(&'static str),

    #[error("not spanning: points do not affinely span R^{0}")]
    NotSpanning(usize),

    #[error("partition too small: need at least 2 indices on each side, got {plus} and {minus}")]
    PartitionTooSmall { plus: usize, minus: usize },

    #[error("not disjoint: index {0} appears on both sides")]
    NotDisjoint(usize),

    #[error("degenerate simplex: vertices {0:?} are affinely dependent")]
    DegenerateSimplex(Vec<usize>),

    #[error("not extendable input: {0}")]
    NotExtendable(String),

    #[error("not in general position: vertices {0:?} lie on a common hyperplane")]
    NotInGeneralPosition(Vec<usize>),

    #[error("wrong signature: {0}")]
    WrongSignature(String),

    #[error("bad edge: {0}")]
    BadEdge(String),

    #[error("undefined: {0}")]
    Undefined(String),

    #[error("cannot achieve general position after {attempts} attempts for vertex {vertex}")]
    GeneralPositionUnreachable { vertex: usize, attempts: usize },

    #[error("invalid drawing: {0}")]
    InvalidDrawing(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid rational {0:?}")]
    InvalidRational(String),

    #[error("no candidate hyperplane bisects every color class: not in general position")]
    NoBisector,

    #[error("theorem violated: {0}")]
    TheoremViolated(String),

    /// An exact re-verification failed. This indicates an arithmetic bug,
    /// never a property of the input.
    #[error("internal verification failure: {0}")]
    Verification(String),
}
