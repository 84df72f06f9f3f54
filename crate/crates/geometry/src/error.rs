use thiserror::Error;

/// Errors raised by conic / quadric geometry operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    /// A 3×3 dual form does not describe a real ellipse (parabola-like
    /// normalization failure or an indefinite quadratic part).
    #[error("dual conic is degenerate: {0}")]
    DegenerateConic(&'static str),
    /// Projecting a dual quadric did not produce an ellipse (camera
    /// center inside the ellipsoid or quadric crossing the principal plane).
    #[error("projection of the ellipsoid is not an ellipse")]
    DegenerateProjection,
    /// Level-set sampling was requested with a non-positive level value.
    #[error("invalid level-set sampling: level {0} is not > 0")]
    InvalidSampling(f64),
    /// The ellipse region lies entirely outside the image rectangle.
    #[error("ellipse does not intersect the image rectangle")]
    EmptyIntersection,
    /// Invalid parameters passed to a constructor.
    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),
}
