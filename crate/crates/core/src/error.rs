//! Error type shared by every module of the crate.

use thiserror::Error;

/// Errors raised by the lattice, diagram, tropical and realize modules.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("determinant of the vertex directions must be positive, got {0}")]
    NonPositiveDeterminant(i64),
    #[error("vector ({0}, {1}) is not primitive")]
    NotPrimitive(i64, i64),
    #[error("polygon is not transverse to the direction ({0}, {1})")]
    NotTransverse(i64, i64),
    #[error("degenerate polygon: {0}")]
    DegeneratePolygon(String),
    #[error("polygon is not convex")]
    NotConvex,
    #[error("diagram is not connected")]
    Disconnected,
    #[error("boundary conditions on an edge that is not parallel to the transverse direction")]
    SideBoundaryCondition,
    #[error("boundary conditions do not match the polygon: {0}")]
    BoundaryMismatch(String),
    #[error("genus {genus} is out of range 0..={max}")]
    GenusOutOfRange { genus: u32, max: u64 },
    #[error("polynomial support does not span the plane")]
    SegmentSupport,
    #[error("ray circuit does not close up")]
    NotClosed,
    #[error("unsupported dual cell: {0}")]
    UnsupportedShape(String),
    #[error("curve is not reduced")]
    NonReduced,
    #[error("curve is reducible")]
    Reducible,
    #[error("vertex {0} is not trivalent")]
    NotTrivalent(usize),
    #[error("curves do not intersect transversally: {0}")]
    NonTransverse(String),
    #[error("point spacing too small: {0}")]
    SpacingTooSmall(String),
    #[error("invalid marking: {0}")]
    InvalidMarking(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn name(&self) -> &'static str {
        match self {
            Error::NonPositiveDeterminant(_) => "NonPositiveDeterminant",
            Error::NotPrimitive(..) => "NotPrimitive",
            Error::NotTransverse(..) => "NotTransverse",
            Error::DegeneratePolygon(_) => "DegeneratePolygon",
            Error::NotConvex => "NotConvex",
            Error::Disconnected => "Disconnected",
            Error::SideBoundaryCondition => "SideBoundaryCondition",
            Error::BoundaryMismatch(_) => "BoundaryMismatch",
            Error::GenusOutOfRange { .. } => "GenusOutOfRange",
            Error::SegmentSupport => "SegmentSupport",
            Error::NotClosed => "NotClosed",
            Error::UnsupportedShape(_) => "UnsupportedShape",
            Error::NonReduced => "NonReduced",
            Error::Reducible => "Reducible",
            Error::NotTrivalent(_) => "NotTrivalent",
            Error::NonTransverse(_) => "NonTransverse",
            Error::SpacingTooSmall(_) => "SpacingTooSmall",
            Error::InvalidMarking(_) => "InvalidMarking",
            Error::Invalid(_) => "Invalid",
            Error::Internal(_) => "Internal",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
