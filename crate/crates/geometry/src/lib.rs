//! Exact projective geometry of ellipses and ellipsoids.
//!
//! Provides the building blocks for object-based pose estimation:
//! parametric ellipses and ellipsoids, their dual-form matrices,
//! pinhole projection of dual quadrics onto dual conics, Gaussian and
//! level-set embeddings of ellipses, and bounding-box utilities.
//!
//! All types are immutable after construction and all operations are
//! pure functions, so everything here is safe to use from parallel code.

mod camera;
mod conic;
mod ellipse;
mod error;
mod quadric;

pub use camera::{Camera, Extrinsics};
pub use conic::{clip_conic_to_image, dual_conic_from_ellipse, ellipse_from_dual_conic, DualConic};
pub use conic::clip_ellipse_to_image;
pub use ellipse::{
    ellipse_bbox, embedding_value, gaussian_from_ellipse, level_set_samples, Bbox, Ellipse,
    GaussianEllipse, DEFAULT_AZIMUTHS, DEFAULT_LEVELS,
};
pub use error::GeometryError;
pub use quadric::{project_ellipsoid, project_ellipsoid_to_ellipse, DualQuadric, Ellipsoid};

/// Wrap an angle into the canonical half-open interval (−π/2, π/2].
///
/// Ellipses are symmetric under a 180° rotation, so orientations are
/// only meaningful modulo π.
pub fn normalize_half_angle(mut angle: f64) -> f64 {
    use std::f64::consts::PI;
    if !angle.is_finite() {
        return angle;
    }
    angle = angle.rem_euclid(PI);
    if angle > PI / 2.0 {
        angle -= PI;
    }
    // rem_euclid maps to [0, π); the shift above yields (−π/2, π/2].
    if angle <= -PI / 2.0 {
        angle += PI;
    }
    angle
}

#[cfg(test)]
mod tests {
    use super::normalize_half_angle;
    use std::f64::consts::PI;

    #[test]
    fn half_angle_wrapping() {
        assert_eq!(normalize_half_angle(0.0), 0.0);
        assert!((normalize_half_angle(PI) - 0.0).abs() < 1e-15);
        assert!((normalize_half_angle(PI / 2.0) - PI / 2.0).abs() < 1e-15);
        // −π/2 is excluded from the interval and maps to +π/2.
        assert!((normalize_half_angle(-PI / 2.0) - PI / 2.0).abs() < 1e-15);
        assert!((normalize_half_angle(1.9 * PI) - (-0.1 * PI)).abs() < 1e-12);
        assert!((normalize_half_angle(-2.3 * PI) - (-0.3 * PI)).abs() < 1e-12);
    }
}
