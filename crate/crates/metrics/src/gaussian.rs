use ellipose_geometry::{gaussian_from_ellipse, Ellipse};
use nalgebra::Matrix2;

/// Principal square root of a symmetric positive-definite 2×2 matrix:
/// `√M = (M + √(det M)·I) / √(Tr M + 2√(det M))`.
pub fn spd_sqrt_2x2(m: &Matrix2<f64>) -> Matrix2<f64> {
    let s = m.determinant().max(0.0).sqrt();
    let t = (m.trace() + 2.0 * s).sqrt();
    (m + Matrix2::identity() * s) / t
}

/// Squared 2-Wasserstein distance between the Gaussian interpretations
/// of two ellipses:
/// `‖μ₁−μ₂‖² + Tr(Σ₁ + Σ₂ − 2(Σ₁^½ Σ₂ Σ₁^½)^½)`.
pub fn wasserstein_distance(e1: &Ellipse, e2: &Ellipse) -> f64 {
    let g1 = gaussian_from_ellipse(e1);
    let g2 = gaussian_from_ellipse(e2);
    let s1h = spd_sqrt_2x2(&g1.covariance);
    let inner = s1h * g2.covariance * s1h;
    let cross = spd_sqrt_2x2(&inner);
    let center = (g1.mean - g2.mean).norm_squared();
    let shape = (g1.covariance + g2.covariance - cross * 2.0).trace();
    center + shape.max(0.0)
}

/// Bhattacharyya distance between the Gaussian interpretations:
/// `⅛ (μ₁−μ₂)ᵀ Σ⁻¹ (μ₁−μ₂) + ½ ln(det Σ / √(det Σ₁ det Σ₂))`
/// with `Σ = (Σ₁+Σ₂)/2`.
pub fn bhattacharyya_distance(e1: &Ellipse, e2: &Ellipse) -> f64 {
    let g1 = gaussian_from_ellipse(e1);
    let g2 = gaussian_from_ellipse(e2);
    let sigma = (g1.covariance + g2.covariance) * 0.5;
    let d = g1.mean - g2.mean;

    // Σ is an average of two SPD matrices; Cholesky only fails on
    // round-off, in which case a tiny diagonal regularization is applied.
    let solved = nalgebra::Cholesky::new(sigma)
        .or_else(|| nalgebra::Cholesky::new(sigma + Matrix2::identity() * 1e-12))
        .map(|ch| ch.solve(&d))
        .unwrap_or_else(|| {
            let reg = sigma + Matrix2::identity() * 1e-12;
            reg.try_inverse().unwrap_or_else(Matrix2::identity) * d
        });
    let mahalanobis = d.dot(&solved);

    let det = sigma.determinant();
    let det1 = g1.covariance.determinant();
    let det2 = g2.covariance.determinant();
    let log_term = (det / (det1 * det2).sqrt()).ln();
    0.125 * mahalanobis + 0.5 * log_term
}
