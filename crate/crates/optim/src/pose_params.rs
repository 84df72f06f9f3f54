use ellipose_geometry::{Camera, Extrinsics};
use nalgebra::{Matrix3, Rotation3, Vector3};

/// Local 6-DoF increment around a base camera pose: an axis-angle
/// rotation update `ω` and a translation update `τ`, applied as
/// `R = exp([ω]ₓ)·R₀`, `t = t₀ + τ`.
///
/// The increment stays meaningful for `‖ω‖ < π`; callers re-center the
/// base pose (`R₀ ← R`, `ω ← 0`) when an optimizer drives `ω` beyond that.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoseParams {
    pub omega: Vector3<f64>,
    pub tau: Vector3<f64>,
}

impl PoseParams {
    pub fn zero() -> Self {
        Self {
            omega: Vector3::zeros(),
            tau: Vector3::zeros(),
        }
    }

    /// Read `[ω, τ]` out of a 6-element optimizer vector.
    pub fn from_slice(x: &[f64]) -> Self {
        debug_assert_eq!(x.len(), 6);
        Self {
            omega: Vector3::new(x[0], x[1], x[2]),
            tau: Vector3::new(x[3], x[4], x[5]),
        }
    }

    pub fn to_array(self) -> [f64; 6] {
        [
            self.omega.x,
            self.omega.y,
            self.omega.z,
            self.tau.x,
            self.tau.y,
            self.tau.z,
        ]
    }

    /// True when the rotation increment left the well-conditioned chart.
    pub fn needs_recentering(&self) -> bool {
        self.omega.norm() >= std::f64::consts::PI
    }
}

/// Apply a pose increment to a base camera.
///
/// The rotation uses the Rodrigues exponential; if round-off drifts the
/// product off the rotation manifold it is snapped back by polar
/// decomposition, so the output always satisfies the camera invariants.
pub fn apply_pose_params(p: &PoseParams, base: &Camera) -> Camera {
    let delta = Rotation3::from_scaled_axis(p.omega);
    let mut r = delta.matrix() * base.rotation();
    if (r * r.transpose() - Matrix3::identity()).norm() > 1e-12 {
        r = polar_rotation(&r);
    }
    let t = base.translation() + p.tau;
    let extrinsics = Extrinsics::new(r, t)
        .expect("polar-projected rotation always satisfies the extrinsics invariants");
    base.with_extrinsics(extrinsics)
}

/// Nearest proper rotation in the Frobenius sense, via SVD.
fn polar_rotation(m: &Matrix3<f64>) -> Matrix3<f64> {
    let svd = m.svd(true, true);
    let u = svd.u.expect("svd of 3x3 always yields u");
    let v_t = svd.v_t.expect("svd of 3x3 always yields v_t");
    let mut r = u * v_t;
    if r.determinant() < 0.0 {
        let mut u_fix = u;
        u_fix.column_mut(2).neg_mut();
        r = u_fix * v_t;
    }
    r
}
