use thiserror::Error;

/// Errors surfaced by the library.
///
/// `HorizonInsufficient` is deliberately separate from the other variants: it
/// means "unknown at this horizon", never "no".
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate vertex name `{0}`")]
    DuplicateVertex(String),
    #[error("loop edge at `{0}`")]
    LoopEdge(String),
    #[error("duplicate edge `{0}`-`{1}`")]
    DuplicateEdge(String, String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("defining graph has {0} vertices; at most 64 are supported")]
    TooManyVertices(usize),
    #[error("malformed word token `{0}`")]
    BadToken(String),
    #[error("element does not belong to this group (letter out of range)")]
    ForeignLetter,
    #[error("operands come from different defining graphs")]
    GraphMismatch,
    #[error("sequence lengths differ: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("tuple arities differ: {0} vs {1}")]
    ArityMismatch(usize, usize),
    #[error("point is not in the domain coset of the gate map")]
    NotInRho,
    #[error("{0} exceeds the configured cap {1}")]
    CapExceeded(usize, usize),
    #[error("ray prefix is not geodesic at step {0}")]
    NonGeodesicRay(usize),
    #[error("period must be nonempty")]
    EmptyPeriod,
    #[error("horizon {0} insufficient to certify the answer")]
    HorizonInsufficient(usize),
    #[error("cube complex is malformed: {0}")]
    BadComplex(String),
    #[error("cube complex violates the nonpositive-curvature link condition: {0}")]
    NpcViolation(String),
    #[error("complex is not special; operation requires specialness")]
    NotSpecial,
    #[error("complex is not connected")]
    Disconnected,
    #[error("map is not a local isometry")]
    NotLocalIsometry,
    #[error("path is not consecutive at step {0}")]
    BrokenPath(usize),
    #[error("internal verification failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
