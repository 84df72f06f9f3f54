use nalgebra::{Matrix3, Matrix3x4, Vector2, Vector3};

use crate::error::GeometryError;

/// Rigid world-to-camera transform: `X_cam = R·X_world + t`.
#[derive(Debug, Clone, PartialEq)]
pub struct Extrinsics {
    rotation: Matrix3<f64>,
    translation: Vector3<f64>,
}

impl Extrinsics {
    pub fn new(rotation: Matrix3<f64>, translation: Vector3<f64>) -> Result<Self, GeometryError> {
        let ortho = (rotation * rotation.transpose() - Matrix3::identity()).norm();
        if ortho > 1e-9 || (rotation.determinant() - 1.0).abs() > 1e-9 {
            return Err(GeometryError::InvalidParameter(
                "extrinsic rotation must be a proper rotation matrix",
            ));
        }
        if !translation.iter().all(|v| v.is_finite()) {
            return Err(GeometryError::InvalidParameter("non-finite translation"));
        }
        Ok(Self {
            rotation,
            translation,
        })
    }

    pub fn identity() -> Self {
        Self {
            rotation: Matrix3::identity(),
            translation: Vector3::zeros(),
        }
    }

    pub fn rotation(&self) -> &Matrix3<f64> {
        &self.rotation
    }

    pub fn translation(&self) -> Vector3<f64> {
        self.translation
    }

    /// Camera center in world coordinates: `−Rᵀ t`.
    pub fn camera_center(&self) -> Vector3<f64> {
        -self.rotation.transpose() * self.translation
    }

    /// Build from a camera center and world-to-camera rotation.
    pub fn from_center(rotation: Matrix3<f64>, center: Vector3<f64>) -> Result<Self, GeometryError> {
        let t = -rotation * center;
        Self::new(rotation, t)
    }

    pub fn transform(&self, p: Vector3<f64>) -> Vector3<f64> {
        self.rotation * p + self.translation
    }
}

/// Calibrated pinhole camera: intrinsics `K`, extrinsics `[R|t]` and the
/// image size in pixels. Produces the projection matrix `P = K[R|t]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Camera {
    intrinsics: Matrix3<f64>,
    extrinsics: Extrinsics,
    image_size: (u32, u32),
}

impl Camera {
    pub fn new(
        intrinsics: Matrix3<f64>,
        extrinsics: Extrinsics,
        image_size: (u32, u32),
    ) -> Result<Self, GeometryError> {
        if (intrinsics[(2, 2)] - 1.0).abs() > 1e-12 {
            return Err(GeometryError::InvalidParameter("K must have K33 = 1"));
        }
        if intrinsics[(0, 0)] <= 0.0 || intrinsics[(1, 1)] <= 0.0 {
            return Err(GeometryError::InvalidParameter(
                "K must have positive focal entries",
            ));
        }
        if intrinsics[(1, 0)].abs() > 1e-12
            || intrinsics[(2, 0)].abs() > 1e-12
            || intrinsics[(2, 1)].abs() > 1e-12
        {
            return Err(GeometryError::InvalidParameter("K must be upper triangular"));
        }
        Ok(Self {
            intrinsics,
            extrinsics,
            image_size,
        })
    }

    /// Standard pinhole intrinsics with focal lengths and principal point.
    pub fn intrinsics_from(fx: f64, fy: f64, cx: f64, cy: f64) -> Matrix3<f64> {
        Matrix3::new(fx, 0.0, cx, 0.0, fy, cy, 0.0, 0.0, 1.0)
    }

    pub fn intrinsics(&self) -> &Matrix3<f64> {
        &self.intrinsics
    }

    pub fn extrinsics(&self) -> &Extrinsics {
        &self.extrinsics
    }

    pub fn rotation(&self) -> &Matrix3<f64> {
        self.extrinsics.rotation()
    }

    pub fn translation(&self) -> Vector3<f64> {
        self.extrinsics.translation()
    }

    pub fn image_size(&self) -> (u32, u32) {
        self.image_size
    }

    pub fn image_size_f64(&self) -> (f64, f64) {
        (self.image_size.0 as f64, self.image_size.1 as f64)
    }

    pub fn camera_center(&self) -> Vector3<f64> {
        self.extrinsics.camera_center()
    }

    /// Projection matrix `P = K [R|t]`.
    pub fn projection_matrix(&self) -> Matrix3x4<f64> {
        let mut rt = Matrix3x4::zeros();
        rt.fixed_view_mut::<3, 3>(0, 0)
            .copy_from(self.extrinsics.rotation());
        rt.fixed_view_mut::<3, 1>(0, 3)
            .copy_from(&self.extrinsics.translation());
        self.intrinsics * rt
    }

    /// Pixel projection of a world point; `None` when it lies at or
    /// behind the principal plane.
    pub fn project_point(&self, p: Vector3<f64>) -> Option<Vector2<f64>> {
        let pc = self.extrinsics.transform(p);
        if pc.z <= 1e-12 {
            return None;
        }
        let uvw = self.intrinsics * pc;
        Some(Vector2::new(uvw.x / uvw.z, uvw.y / uvw.z))
    }

    /// Unit bearing in the camera frame for a pixel: `K⁻¹ (u, v, 1)`,
    /// normalized.
    pub fn bearing(&self, pixel: Vector2<f64>) -> Vector3<f64> {
        let k = &self.intrinsics;
        // K is upper triangular with unit bottom-right entry; invert by
        // back substitution.
        let y = (pixel.y - k[(1, 2)]) / k[(1, 1)];
        let x = (pixel.x - k[(0, 2)] - k[(0, 1)] * y) / k[(0, 0)];
        Vector3::new(x, y, 1.0).normalize()
    }

    pub fn with_extrinsics(&self, extrinsics: Extrinsics) -> Self {
        Self {
            intrinsics: self.intrinsics,
            extrinsics,
            image_size: self.image_size,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn projection_matrix_layout() {
        let k = Camera::intrinsics_from(600.0, 580.0, 320.0, 240.0);
        let cam = Camera::new(k, Extrinsics::identity(), (640, 480)).unwrap();
        let p = cam.projection_matrix();
        assert_relative_eq!(p[(0, 0)], 600.0);
        assert_relative_eq!(p[(0, 2)], 320.0);
        assert_relative_eq!(p[(2, 3)], 0.0);

        let uv = cam.project_point(Vector3::new(0.0, 0.0, 2.0)).unwrap();
        assert_relative_eq!(uv.x, 320.0);
        assert_relative_eq!(uv.y, 240.0);
    }

    #[test]
    fn bearing_round_trip() {
        let k = Camera::intrinsics_from(600.0, 580.0, 320.0, 240.0);
        let cam = Camera::new(k, Extrinsics::identity(), (640, 480)).unwrap();
        let p = Vector3::new(0.3, -0.2, 2.5);
        let uv = cam.project_point(p).unwrap();
        let b = cam.bearing(uv);
        assert_relative_eq!(b.cross(&p.normalize()).norm(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn camera_center_identity() {
        let r = nalgebra::Rotation3::from_euler_angles(0.2, -0.4, 0.9);
        let center = Vector3::new(1.0, -2.0, 0.5);
        let ext = Extrinsics::from_center(*r.matrix(), center).unwrap();
        assert_relative_eq!(ext.camera_center(), center, epsilon = 1e-12);
    }

    #[test]
    fn behind_camera_is_none() {
        let cam = Camera::new(Matrix3::identity(), Extrinsics::identity(), (10, 10)).unwrap();
        assert!(cam.project_point(Vector3::new(0.0, 0.0, -1.0)).is_none());
        assert!(cam.project_point(Vector3::new(0.0, 0.0, 0.0)).is_none());
    }

    #[test]
    fn invalid_intrinsics_rejected() {
        let mut k = Matrix3::identity();
        k[(2, 2)] = 2.0;
        assert!(Camera::new(k, Extrinsics::identity(), (10, 10)).is_err());
        let mut k = Matrix3::identity();
        k[(0, 0)] = -1.0;
        assert!(Camera::new(k, Extrinsics::identity(), (10, 10)).is_err());
    }
}
