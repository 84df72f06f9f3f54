use nalgebra::{Matrix2, Matrix3, Vector2};

use crate::ellipse::{ellipse_bbox, embedding_value, Bbox, Ellipse};
use crate::error::GeometryError;
use crate::normalize_half_angle;

/// Dual form of a conic: the symmetric 3×3 matrix of its tangent-line
/// envelope, `l ᵀ C* l = 0` for every tangent line `l`.
///
/// Dual conics are defined up to scale; the canonical normalization used
/// throughout this crate fixes `m₃₃ = −1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DualConic {
    m: Matrix3<f64>,
}

impl DualConic {
    /// Wrap a matrix, symmetrizing it to remove round-off. Returns an
    /// error when the input is meaningfully asymmetric (relative
    /// asymmetry above 1e-12).
    pub fn new(m: Matrix3<f64>) -> Result<Self, GeometryError> {
        let asym = (m - m.transpose()).norm();
        let scale = m.norm().max(1.0);
        if asym > 1e-12 * scale {
            return Err(GeometryError::InvalidParameter(
                "dual conic matrix is not symmetric",
            ));
        }
        Ok(Self::from_symmetric(m))
    }

    pub(crate) fn from_symmetric(m: Matrix3<f64>) -> Self {
        Self {
            m: (m + m.transpose()) * 0.5,
        }
    }

    pub fn matrix(&self) -> &Matrix3<f64> {
        &self.m
    }

    /// Matrix rescaled so that `m₃₃ = −1`.
    pub fn normalized(&self) -> Result<Matrix3<f64>, GeometryError> {
        let m33 = self.m[(2, 2)];
        if m33.abs() <= 1e-12 * self.m.norm().max(1.0) {
            return Err(GeometryError::DegenerateConic("m33 is zero"));
        }
        Ok(self.m / -m33)
    }
}

/// Dual form of an ellipse: `H·diag(α², β², −1)·Hᵀ` with
/// `H = [[R(θ), c], [0, 1]]`. The result satisfies `m₃₃ = −1`.
pub fn dual_conic_from_ellipse(e: &Ellipse) -> DualConic {
    let r = e.rotation();
    let mut h = Matrix3::identity();
    h.fixed_view_mut::<2, 2>(0, 0).copy_from(r.matrix());
    h[(0, 2)] = e.center().x;
    h[(1, 2)] = e.center().y;
    let d = Matrix3::from_diagonal(&nalgebra::Vector3::new(
        e.major() * e.major(),
        e.minor() * e.minor(),
        -1.0,
    ));
    DualConic::from_symmetric(h * d * h.transpose())
}

/// Recover the parametric ellipse from a dual conic.
///
/// Normalizes to `m₃₃ = −1`, reads the center off the last column and the
/// shape from the closed-form eigendecomposition of the 2×2 block plus
/// the center outer product. Fails on parabola-like forms (`m₃₃ ≈ 0`)
/// and on indefinite shapes (hyperbolas, imaginary conics).
pub fn ellipse_from_dual_conic(c: &DualConic) -> Result<Ellipse, GeometryError> {
    let s = c.normalized()?;
    let center = Vector2::new(-s[(0, 2)], -s[(1, 2)]);
    // S = [[R Da Rᵀ − c cᵀ, −c], [−cᵀ, −1]] with Da = diag(α², β²).
    let w = Matrix2::new(s[(0, 0)], s[(0, 1)], s[(0, 1)], s[(1, 1)]) + center * center.transpose();
    let (l1, l2, angle) = sym2x2_eigen(&w);
    if l2 <= 0.0 || !l1.is_finite() {
        return Err(GeometryError::DegenerateConic("shape is not an ellipse"));
    }
    Ellipse::new(center.x, center.y, l1.sqrt(), l2.sqrt(), angle)
}

/// Closed-form eigendecomposition of a symmetric 2×2 matrix.
/// Returns `(λ₁, λ₂, θ)` with λ₁ ≥ λ₂ and θ the orientation of the
/// λ₁ eigenvector in (−π/2, π/2] (0 for isotropic input).
pub(crate) fn sym2x2_eigen(m: &Matrix2<f64>) -> (f64, f64, f64) {
    let (a, b, c) = (m[(0, 0)], m[(0, 1)], m[(1, 1)]);
    let mean = 0.5 * (a + c);
    let rad = (0.25 * (a - c) * (a - c) + b * b).sqrt();
    let angle = if rad <= f64::EPSILON * mean.abs().max(1.0) {
        0.0
    } else {
        normalize_half_angle(0.5 * (2.0 * b).atan2(a - c))
    };
    (mean + rad, mean - rad, angle)
}

/// Bounding box of the intersection of an ellipse with the image
/// rectangle `[0, w] × [0, h]`.
///
/// The extreme points of the (convex) intersection region are found
/// among: ellipse axis-extreme points inside the rectangle, exact
/// contour/edge crossing points, and rectangle corners inside the
/// ellipse. The result is clamped to the rectangle.
pub fn clip_conic_to_image(c: &DualConic, image: (f64, f64)) -> Result<Bbox, GeometryError> {
    let e = ellipse_from_dual_conic(c)?;
    clip_ellipse_to_image(&e, image)
}

/// Same as [`clip_conic_to_image`] starting from a parametric ellipse.
pub fn clip_ellipse_to_image(e: &Ellipse, image: (f64, f64)) -> Result<Bbox, GeometryError> {
    let (w, h) = image;
    let eps = 1e-9;
    let inside_rect = |p: &Vector2<f64>| {
        p.x >= -eps && p.x <= w + eps && p.y >= -eps && p.y <= h + eps
    };

    let mut pts: Vec<Vector2<f64>> = Vec::with_capacity(16);

    // Ellipse extreme points (where the tight bbox touches the contour).
    let bb = ellipse_bbox(e);
    let ctr = e.center();
    let (a2, b2) = (e.major() * e.major(), e.minor() * e.minor());
    let (st, ct) = e.angle().sin_cos();
    let hx = 0.5 * bb.width();
    let hy = 0.5 * bb.height();
    let cross = (a2 - b2) * st * ct;
    pts.push(Vector2::new(ctr.x + hx, ctr.y + cross / hx));
    pts.push(Vector2::new(ctr.x - hx, ctr.y - cross / hx));
    pts.push(Vector2::new(ctr.x + cross / hy, ctr.y + hy));
    pts.push(Vector2::new(ctr.x - cross / hy, ctr.y - hy));
    pts.retain(|p| inside_rect(p));

    // Rectangle corners inside the ellipse.
    for corner in [
        Vector2::new(0.0, 0.0),
        Vector2::new(w, 0.0),
        Vector2::new(0.0, h),
        Vector2::new(w, h),
    ] {
        if embedding_value(e, corner) <= 1.0 + eps {
            pts.push(corner);
        }
    }

    // Exact crossings of the contour with the four edge lines.
    for x in [0.0, w] {
        for p in contour_points_at_x(e, x) {
            if p.y >= -eps && p.y <= h + eps {
                pts.push(p);
            }
        }
    }
    for y in [0.0, h] {
        for p in contour_points_at_y(e, y) {
            if p.x >= -eps && p.x <= w + eps {
                pts.push(p);
            }
        }
    }

    if pts.is_empty() {
        return Err(GeometryError::EmptyIntersection);
    }

    let mut out = Bbox {
        min_x: f64::INFINITY,
        min_y: f64::INFINITY,
        max_x: f64::NEG_INFINITY,
        max_y: f64::NEG_INFINITY,
    };
    for p in &pts {
        out.min_x = out.min_x.min(p.x);
        out.min_y = out.min_y.min(p.y);
        out.max_x = out.max_x.max(p.x);
        out.max_y = out.max_y.max(p.y);
    }
    out.min_x = out.min_x.clamp(0.0, w);
    out.max_x = out.max_x.clamp(0.0, w);
    out.min_y = out.min_y.clamp(0.0, h);
    out.max_y = out.max_y.clamp(0.0, h);
    Ok(out)
}

/// Contour points with a given x coordinate (0, 1 or 2 points).
fn contour_points_at_x(e: &Ellipse, x: f64) -> Vec<Vector2<f64>> {
    let r = e.rotation();
    let (r00, r01) = (r.matrix()[(0, 0)], r.matrix()[(0, 1)]);
    let (r10, r11) = (r.matrix()[(1, 0)], r.matrix()[(1, 1)]);
    solve_phase(
        r00 * e.major(),
        r01 * e.minor(),
        x - e.center().x,
    )
    .into_iter()
    .map(|(cos_t, sin_t)| {
        Vector2::new(
            x,
            e.center().y + r10 * e.major() * cos_t + r11 * e.minor() * sin_t,
        )
    })
    .collect()
}

/// Contour points with a given y coordinate.
fn contour_points_at_y(e: &Ellipse, y: f64) -> Vec<Vector2<f64>> {
    let r = e.rotation();
    let (r00, r01) = (r.matrix()[(0, 0)], r.matrix()[(0, 1)]);
    let (r10, r11) = (r.matrix()[(1, 0)], r.matrix()[(1, 1)]);
    solve_phase(
        r10 * e.major(),
        r11 * e.minor(),
        y - e.center().y,
    )
    .into_iter()
    .map(|(cos_t, sin_t)| {
        Vector2::new(
            e.center().x + r00 * e.major() * cos_t + r01 * e.minor() * sin_t,
            y,
        )
    })
    .collect()
}

/// Solve `A cos t + B sin t = C` for `(cos t, sin t)`.
fn solve_phase(a: f64, b: f64, c: f64) -> Vec<(f64, f64)> {
    let amp = (a * a + b * b).sqrt();
    if amp < 1e-300 || c.abs() > amp {
        return Vec::new();
    }
    // A cos t + B sin t = amp · cos(t − base) with base = atan2(B, A).
    let base = b.atan2(a);
    let delta = (c / amp).clamp(-1.0, 1.0).acos();
    let t1 = base + delta;
    let mut pts = vec![(t1.cos(), t1.sin())];
    if delta > 1e-12 {
        let t2 = base - delta;
        pts.push((t2.cos(), t2.sin()));
    }
    pts
}
