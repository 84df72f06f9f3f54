use nalgebra::{Matrix3, Matrix4, Vector3, Vector4};

use crate::camera::Camera;
use crate::conic::{ellipse_from_dual_conic, DualConic};
use crate::error::GeometryError;

/// Solid ellipsoid in world coordinates (meters).
#[derive(Debug, Clone, PartialEq)]
pub struct Ellipsoid {
    center: Vector3<f64>,
    semi_axes: Vector3<f64>,
    rotation: Matrix3<f64>,
}

impl Ellipsoid {
    pub fn new(
        center: Vector3<f64>,
        semi_axes: Vector3<f64>,
        rotation: Matrix3<f64>,
    ) -> Result<Self, GeometryError> {
        if !semi_axes.iter().all(|&a| a.is_finite() && a > 0.0) {
            return Err(GeometryError::InvalidParameter(
                "ellipsoid semi-axes must be > 0",
            ));
        }
        let ortho = (rotation * rotation.transpose() - Matrix3::identity()).norm();
        if ortho > 1e-9 || (rotation.determinant() - 1.0).abs() > 1e-9 {
            return Err(GeometryError::InvalidParameter(
                "ellipsoid rotation must be a proper rotation matrix",
            ));
        }
        Ok(Self {
            center,
            semi_axes,
            rotation,
        })
    }

    /// Axis-aligned sphere shortcut.
    pub fn sphere(center: Vector3<f64>, radius: f64) -> Result<Self, GeometryError> {
        Self::new(
            center,
            Vector3::new(radius, radius, radius),
            Matrix3::identity(),
        )
    }

    pub fn center(&self) -> Vector3<f64> {
        self.center
    }

    pub fn semi_axes(&self) -> Vector3<f64> {
        self.semi_axes
    }

    pub fn rotation(&self) -> &Matrix3<f64> {
        &self.rotation
    }

    /// Largest semi-axis, radius of the bounding sphere.
    pub fn bounding_radius(&self) -> f64 {
        self.semi_axes.max()
    }

    /// True if the world point lies strictly inside the ellipsoid.
    pub fn contains(&self, p: Vector3<f64>) -> bool {
        let local = self.rotation.transpose() * (p - self.center);
        let v = Vector3::new(
            local.x / self.semi_axes.x,
            local.y / self.semi_axes.y,
            local.z / self.semi_axes.z,
        );
        v.norm_squared() < 1.0
    }
}

/// Dual form of a quadric surface: symmetric 4×4 matrix, projecting to a
/// dual conic via `C* = P Q* Pᵀ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DualQuadric {
    m: Matrix4<f64>,
}

impl DualQuadric {
    /// `H·diag(a², b², c², −1)·Hᵀ` with `H = [[R, center], [0, 1]]`.
    pub fn from_ellipsoid(e: &Ellipsoid) -> Self {
        let mut h = Matrix4::identity();
        h.fixed_view_mut::<3, 3>(0, 0).copy_from(&e.rotation);
        h.fixed_view_mut::<3, 1>(0, 3).copy_from(&e.center);
        let a = e.semi_axes;
        let d = Matrix4::from_diagonal(&Vector4::new(a.x * a.x, a.y * a.y, a.z * a.z, -1.0));
        let m = h * d * h.transpose();
        Self {
            m: (m + m.transpose()) * 0.5,
        }
    }

    pub fn matrix(&self) -> &Matrix4<f64> {
        &self.m
    }
}

impl From<&Ellipsoid> for DualQuadric {
    fn from(e: &Ellipsoid) -> Self {
        Self::from_ellipsoid(e)
    }
}

/// Project a dual quadric through a camera: `C* = P Q* Pᵀ`, symmetrized
/// to kill round-off.
///
/// Fails with `DegenerateProjection` when the result is not an ellipse
/// (camera center inside the ellipsoid, or the quadric crossing the
/// principal plane).
pub fn project_ellipsoid(cam: &Camera, q: &DualQuadric) -> Result<DualConic, GeometryError> {
    let p = cam.projection_matrix();
    let c = p * q.matrix() * p.transpose();
    let conic = DualConic::from_symmetric(c);
    // Validate that the projection is a real ellipse.
    ellipse_from_dual_conic(&conic).map_err(|_| GeometryError::DegenerateProjection)?;
    Ok(conic)
}

/// Convenience: project and convert to a parametric ellipse in one step.
pub fn project_ellipsoid_to_ellipse(
    cam: &Camera,
    q: &DualQuadric,
) -> Result<crate::Ellipse, GeometryError> {
    let conic = project_ellipsoid(cam, q)?;
    ellipse_from_dual_conic(&conic).map_err(|_| GeometryError::DegenerateProjection)
}
