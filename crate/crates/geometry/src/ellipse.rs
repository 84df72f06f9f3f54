use nalgebra::{Matrix2, Rotation2, Vector2};

use crate::error::GeometryError;
use crate::normalize_half_angle;

/// Parametric 2D ellipse in pixel coordinates.
///
/// Canonical form: `semi_axes.x >= semi_axes.y > 0` and
/// `angle ∈ (−π/2, π/2]`; circles get `angle = 0`. Constructors enforce
/// the canonical form, so two ellipses describing the same point set
/// compare equal field by field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ellipse {
    center: Vector2<f64>,
    semi_axes: Vector2<f64>,
    angle: f64,
}

impl Ellipse {
    /// Build an ellipse from center `(cx, cy)`, semi-axes `(a, b)` and the
    /// orientation of the `a` axis in radians. Axes may be given in any
    /// order; the result is canonicalized.
    pub fn new(cx: f64, cy: f64, a: f64, b: f64, angle: f64) -> Result<Self, GeometryError> {
        if !(a.is_finite() && b.is_finite() && a > 0.0 && b > 0.0) {
            return Err(GeometryError::InvalidParameter("semi-axes must be > 0"));
        }
        if !(cx.is_finite() && cy.is_finite() && angle.is_finite()) {
            return Err(GeometryError::InvalidParameter("non-finite ellipse field"));
        }
        let (major, minor, angle) = if a >= b {
            (a, b, angle)
        } else {
            (b, a, angle + std::f64::consts::FRAC_PI_2)
        };
        let angle = if major == minor {
            0.0
        } else {
            normalize_half_angle(angle)
        };
        Ok(Self {
            center: Vector2::new(cx, cy),
            semi_axes: Vector2::new(major, minor),
            angle,
        })
    }

    /// Circle of radius `r` centered at `(cx, cy)`.
    pub fn circle(cx: f64, cy: f64, r: f64) -> Result<Self, GeometryError> {
        Self::new(cx, cy, r, r, 0.0)
    }

    pub fn center(&self) -> Vector2<f64> {
        self.center
    }

    /// Semi-axes `(α, β)` with α ≥ β.
    pub fn semi_axes(&self) -> Vector2<f64> {
        self.semi_axes
    }

    /// Orientation of the major axis, in (−π/2, π/2].
    pub fn angle(&self) -> f64 {
        self.angle
    }

    pub fn major(&self) -> f64 {
        self.semi_axes.x
    }

    pub fn minor(&self) -> f64 {
        self.semi_axes.y
    }

    pub fn area(&self) -> f64 {
        std::f64::consts::PI * self.semi_axes.x * self.semi_axes.y
    }

    /// Aspect ratio α/β ≥ 1.
    pub fn aspect_ratio(&self) -> f64 {
        self.semi_axes.x / self.semi_axes.y
    }

    pub fn rotation(&self) -> Rotation2<f64> {
        Rotation2::new(self.angle)
    }

    /// Translate the ellipse by `t` and rotate its orientation in place
    /// (about its own center) by `angle`.
    pub fn transformed(&self, angle: f64, t: Vector2<f64>) -> Self {
        let new_angle = if self.semi_axes.x == self.semi_axes.y {
            0.0
        } else {
            normalize_half_angle(self.angle + angle)
        };
        Self {
            center: self.center + t,
            semi_axes: self.semi_axes,
            angle: new_angle,
        }
    }

    /// Point on the contour at parametric angle `phi`.
    pub fn point_at(&self, phi: f64) -> Vector2<f64> {
        let local = Vector2::new(self.semi_axes.x * phi.cos(), self.semi_axes.y * phi.sin());
        self.center + self.rotation() * local
    }

    /// Inscribed convex polygon with `n` vertices, counter-clockwise.
    pub fn polygon(&self, n: usize) -> Vec<Vector2<f64>> {
        let rot = self.rotation();
        (0..n)
            .map(|k| {
                let phi = 2.0 * std::f64::consts::PI * (k as f64) / (n as f64);
                self.center
                    + rot * Vector2::new(self.semi_axes.x * phi.cos(), self.semi_axes.y * phi.sin())
            })
            .collect()
    }

    /// True if `x` lies inside or on the contour.
    pub fn contains(&self, x: Vector2<f64>) -> bool {
        embedding_value(self, x) <= 1.0
    }
}

/// Axis-aligned bounding box `(min_x, min_y, max_x, max_y)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bbox {
    pub min_x: f64,
    pub min_y: f64,
    pub max_x: f64,
    pub max_y: f64,
}

impl Bbox {
    pub fn as_array(&self) -> [f64; 4] {
        [self.min_x, self.min_y, self.max_x, self.max_y]
    }

    pub fn width(&self) -> f64 {
        self.max_x - self.min_x
    }

    pub fn height(&self) -> f64 {
        self.max_y - self.min_y
    }

    pub fn center(&self) -> Vector2<f64> {
        Vector2::new(
            0.5 * (self.min_x + self.max_x),
            0.5 * (self.min_y + self.max_y),
        )
    }

    /// Largest axis-aligned ellipse contained in the box.
    pub fn inscribed_ellipse(&self) -> Result<Ellipse, GeometryError> {
        let c = self.center();
        Ellipse::new(c.x, c.y, 0.5 * self.width(), 0.5 * self.height(), 0.0)
    }
}

/// Tight axis-aligned bounding box of an ellipse.
///
/// Half extents are `√(α²cos²θ + β²sin²θ)` horizontally and
/// `√(α²sin²θ + β²cos²θ)` vertically.
pub fn ellipse_bbox(e: &Ellipse) -> Bbox {
    let (a2, b2) = (e.major() * e.major(), e.minor() * e.minor());
    let (c, s) = (e.angle().cos(), e.angle().sin());
    let hx = (a2 * c * c + b2 * s * s).sqrt();
    let hy = (a2 * s * s + b2 * c * c).sqrt();
    let ctr = e.center();
    Bbox {
        min_x: ctr.x - hx,
        min_y: ctr.y - hy,
        max_x: ctr.x + hx,
        max_y: ctr.y + hy,
    }
}

/// 2D Gaussian interpretation of an ellipse: the contour is the unit
/// Mahalanobis level curve of `N(mean, covariance)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianEllipse {
    pub mean: Vector2<f64>,
    pub covariance: Matrix2<f64>,
}

/// Interpret an ellipse as a 2D Gaussian: `μ = center`,
/// `Σ = R(θ)·diag(α², β²)·R(θ)ᵀ`.
pub fn gaussian_from_ellipse(e: &Ellipse) -> GaussianEllipse {
    let r = *e.rotation().matrix();
    let d = Matrix2::from_diagonal(&Vector2::new(
        e.major() * e.major(),
        e.minor() * e.minor(),
    ));
    GaussianEllipse {
        mean: e.center(),
        covariance: r * d * r.transpose(),
    }
}

/// Quadratic level-set embedding of an ellipse.
///
/// `Φ(x) = (x−c)ᵀ R(θ) diag(1/α², 1/β²) R(θ)ᵀ (x−c)`: zero at the
/// center, exactly one on the contour, growing quadratically outward.
pub fn embedding_value(e: &Ellipse, x: Vector2<f64>) -> f64 {
    let local = e.rotation().inverse() * (x - e.center());
    let u = local.x / e.major();
    let v = local.y / e.minor();
    u * u + v * v
}

/// Points regularly sampled along level curves of the embedding.
///
/// For each level `s` and azimuth `φₖ = 2πk/n`, the sample is
/// `c + √s·R(θ)·(α cos φₖ, β sin φₖ)`, which satisfies `Φ(x) = s`
/// exactly. Samples are ordered level-major.
pub fn level_set_samples(
    e: &Ellipse,
    n_azimuths: usize,
    levels: &[f64],
) -> Result<Vec<Vector2<f64>>, GeometryError> {
    if n_azimuths < 3 {
        return Err(GeometryError::InvalidParameter("need at least 3 azimuths"));
    }
    if let Some(&bad) = levels.iter().find(|&&s| !(s > 0.0)) {
        return Err(GeometryError::InvalidSampling(bad));
    }
    let rot = e.rotation();
    let mut out = Vec::with_capacity(n_azimuths * levels.len());
    for &level in levels {
        let r = level.sqrt();
        for k in 0..n_azimuths {
            let phi = 2.0 * std::f64::consts::PI * (k as f64) / (n_azimuths as f64);
            let local = Vector2::new(r * e.major() * phi.cos(), r * e.minor() * phi.sin());
            out.push(e.center() + rot * local);
        }
    }
    Ok(out)
}

/// Default number of azimuths for level-set sampling.
pub const DEFAULT_AZIMUTHS: usize = 6;
/// Default level values: squared radial factors {0.5, 1, 1.5, 2} of the contour.
pub const DEFAULT_LEVELS: [f64; 4] = [0.25, 1.0, 2.25, 4.0];

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn canonicalizes_axis_order_and_angle() {
        // Swapped axes: the orientation shifts by 90°.
        let e = Ellipse::new(1.0, 2.0, 1.0, 3.0, 0.0).unwrap();
        assert_relative_eq!(e.major(), 3.0);
        assert_relative_eq!(e.minor(), 1.0);
        assert_relative_eq!(e.angle(), std::f64::consts::FRAC_PI_2);

        // Circles always report angle 0.
        let c = Ellipse::new(0.0, 0.0, 2.0, 2.0, 1.3).unwrap();
        assert_eq!(c.angle(), 0.0);
    }

    #[test]
    fn rejects_bad_axes() {
        assert!(Ellipse::new(0.0, 0.0, 0.0, 1.0, 0.0).is_err());
        assert!(Ellipse::new(0.0, 0.0, -1.0, 1.0, 0.0).is_err());
        assert!(Ellipse::new(0.0, 0.0, f64::NAN, 1.0, 0.0).is_err());
    }

    #[test]
    fn embedding_center_contour_outside() {
        let circle = Ellipse::circle(0.0, 0.0, 1.0).unwrap();
        assert_eq!(embedding_value(&circle, Vector2::new(0.0, 0.0)), 0.0);
        assert_relative_eq!(embedding_value(&circle, Vector2::new(1.0, 0.0)), 1.0);
        assert_relative_eq!(embedding_value(&circle, Vector2::new(2.0, 0.0)), 4.0);
    }

    #[test]
    fn embedding_rigid_invariance() {
        // Φ is invariant under a simultaneous rigid transform of ellipse and query.
        let e = Ellipse::new(3.0, -2.0, 4.0, 1.5, 0.4).unwrap();
        let x = Vector2::new(5.5, -1.0);
        let phi = 1.1;
        let rot = Rotation2::new(phi);
        let t = Vector2::new(-7.0, 2.5);

        let moved_center = rot * e.center() + t;
        let moved = Ellipse::new(
            moved_center.x,
            moved_center.y,
            e.major(),
            e.minor(),
            e.angle() + phi,
        )
        .unwrap();
        let moved_x = rot * x + t;
        assert_relative_eq!(
            embedding_value(&e, x),
            embedding_value(&moved, moved_x),
            epsilon = 1e-12
        );
    }

    #[test]
    fn level_samples_unit_circle() {
        let circle = Ellipse::circle(0.0, 0.0, 1.0).unwrap();
        let pts = level_set_samples(&circle, 4, &[1.0]).unwrap();
        let expect = [(1.0, 0.0), (0.0, 1.0), (-1.0, 0.0), (0.0, -1.0)];
        for (p, (x, y)) in pts.iter().zip(expect) {
            assert_relative_eq!(p.x, x, epsilon = 1e-12);
            assert_relative_eq!(p.y, y, epsilon = 1e-12);
        }
    }

    #[test]
    fn level_samples_sit_on_their_level() {
        let e = Ellipse::new(12.0, -4.0, 30.0, 11.0, -0.7).unwrap();
        let pts = level_set_samples(&e, DEFAULT_AZIMUTHS, &DEFAULT_LEVELS).unwrap();
        assert_eq!(pts.len(), 24);
        for (i, p) in pts.iter().enumerate() {
            let level = DEFAULT_LEVELS[i / DEFAULT_AZIMUTHS];
            assert_relative_eq!(embedding_value(&e, *p), level, epsilon = 1e-10);
        }
    }

    #[test]
    fn level_samples_rotation_equivariance() {
        let e = Ellipse::new(4.0, 9.0, 5.0, 2.0, 0.3).unwrap();
        let phi = 0.9;
        let rot = Rotation2::new(phi);
        let rc = rot * e.center();
        let rotated = Ellipse::new(rc.x, rc.y, e.major(), e.minor(), e.angle() + phi).unwrap();

        let base = level_set_samples(&e, 6, &DEFAULT_LEVELS).unwrap();
        let moved = level_set_samples(&rotated, 6, &DEFAULT_LEVELS).unwrap();
        for (p, q) in base.iter().zip(moved.iter()) {
            let expect = rot * p;
            assert_relative_eq!(expect.x, q.x, epsilon = 1e-10);
            assert_relative_eq!(expect.y, q.y, epsilon = 1e-10);
        }
    }

    #[test]
    fn level_samples_reject_bad_levels() {
        let e = Ellipse::circle(0.0, 0.0, 1.0).unwrap();
        assert!(matches!(
            level_set_samples(&e, 6, &[1.0, 0.0]),
            Err(GeometryError::InvalidSampling(_))
        ));
        assert!(matches!(
            level_set_samples(&e, 6, &[-2.0]),
            Err(GeometryError::InvalidSampling(_))
        ));
        assert!(level_set_samples(&e, 2, &[1.0]).is_err());
    }

    #[test]
    fn bbox_of_simple_shapes() {
        let circle = Ellipse::circle(0.0, 0.0, 1.0).unwrap();
        assert_eq!(ellipse_bbox(&circle).as_array(), [-1.0, -1.0, 1.0, 1.0]);

        let e = Ellipse::new(0.0, 0.0, 2.0, 1.0, 0.0).unwrap();
        assert_eq!(ellipse_bbox(&e).as_array(), [-2.0, -1.0, 2.0, 1.0]);
    }

    #[test]
    fn bbox_rotated_matches_parametric_maximum() {
        // Independent oracle: scan the contour densely for extreme coordinates.
        let e = Ellipse::new(0.0, 0.0, 2.0, 1.0, std::f64::consts::FRAC_PI_4).unwrap();
        let n = 100_000;
        let mut max_x: f64 = f64::MIN;
        let mut max_y: f64 = f64::MIN;
        for k in 0..n {
            let phi = 2.0 * std::f64::consts::PI * (k as f64) / (n as f64);
            let p = e.point_at(phi);
            max_x = max_x.max(p.x);
            max_y = max_y.max(p.y);
        }
        let bb = ellipse_bbox(&e);
        assert_relative_eq!(bb.max_x, (2.5f64).sqrt(), epsilon = 1e-9);
        assert_relative_eq!(bb.max_y, (2.5f64).sqrt(), epsilon = 1e-9);
        assert_relative_eq!(bb.max_x, max_x, epsilon = 1e-7);
        assert_relative_eq!(bb.max_y, max_y, epsilon = 1e-7);
    }

    #[test]
    fn gaussian_interpretation() {
        let circle = Ellipse::circle(0.0, 0.0, 1.0).unwrap();
        let g = gaussian_from_ellipse(&circle);
        assert_relative_eq!(g.covariance, Matrix2::identity(), epsilon = 1e-14);

        let e = Ellipse::new(5.0, 5.0, 3.0, 1.0, 0.0).unwrap();
        let g = gaussian_from_ellipse(&e);
        assert_relative_eq!(g.mean.x, 5.0);
        assert_relative_eq!(g.mean.y, 5.0);
        assert_relative_eq!(
            g.covariance,
            Matrix2::from_diagonal(&Vector2::new(9.0, 1.0)),
            epsilon = 1e-12
        );

        // 90° rotation swaps the diagonal.
        let e = Ellipse::new(0.0, 0.0, 3.0, 1.0, std::f64::consts::FRAC_PI_2).unwrap();
        let g = gaussian_from_ellipse(&e);
        assert_relative_eq!(
            g.covariance,
            Matrix2::from_diagonal(&Vector2::new(1.0, 9.0)),
            epsilon = 1e-12
        );
    }
}
