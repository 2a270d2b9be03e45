use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("zero vector has no primitive direction")]
    ZeroVector,
    #[error("vector {0} is not primitive")]
    NotPrimitive(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("invalid fan: {0}")]
    InvalidFan(String),
    #[error("fan is not smooth")]
    NotSmooth,
    #[error("fan is not complete")]
    NotComplete,
    #[error("fan not smooth along wall {0:?}")]
    WallNotSmooth(Vec<usize>),
    #[error("cone {0:?} is not a face of any maximal cone")]
    NotAFace(Vec<usize>),
    #[error("cannot subdivide along a cone of dimension {0}; need at least 2")]
    CenterTooSmall(usize),
    #[error("not a codimension-two blow-down wall")]
    NotBlowDownWall,
    #[error("fan is not a star subdivision along this wall")]
    NotStarSubdivision,
    #[error("divisor has {divisor} coefficients but the fan has {rays} rays")]
    DivisorSize { divisor: usize, rays: usize },
    #[error("wall {0:?} is not Mori extremal")]
    NotMoriExtremal(Vec<usize>),
    #[error("ray index {index} out of range for a fan with {rays} rays")]
    RayIndex { index: usize, rays: usize },
    #[error("divisor V({0}) is not isomorphic to a projective space")]
    NotProjectiveSpace(usize),
    #[error("invariant subvariety of cone {0:?} is not a projective space")]
    CenterNotProjective(Vec<usize>),
    #[error("line class not well-defined on V({0})")]
    LineClassNotWellDefined(usize),
    #[error("fan is not Fano")]
    NotFano,
    #[error("transverse extremal wall {wall:?} has coefficients {coeffs:?}; expected all zero or a single -1")]
    TransversePattern { wall: Vec<usize>, coeffs: Vec<String> },
    #[error("theorem violation: {0}")]
    TheoremViolation(String),
    #[error("{0}")]
    OutOfRange(String),
    #[error("malformed fan file: {0}")]
    Parse(String),
}
