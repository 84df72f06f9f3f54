use ellipose_geometry::{dual_conic_from_ellipse, Ellipse};

/// Which norm to apply to the dual-form matrix difference.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlgebraicNorm {
    /// Squared norm of the five upper-triangular elements.
    Vectorized,
    /// Frobenius norm `√Tr((C₁*−C₂*)(C₁*−C₂*)ᵀ)` of the full difference.
    Frobenius,
}

/// Algebraic error between the dual-form matrices of two ellipses,
/// normalized to `m₃₃ = −1`.
///
/// These costs compare contours through the tangent-line envelope; their
/// value changes when both ellipses are translated together, since the
/// matrix entries mix center and shape.
pub fn algebraic_distance(e1: &Ellipse, e2: &Ellipse, norm: AlgebraicNorm) -> f64 {
    // H-construction guarantees m33 = −1 already.
    let c1 = dual_conic_from_ellipse(e1);
    let c2 = dual_conic_from_ellipse(e2);
    let d = c1.matrix() - c2.matrix();
    match norm {
        AlgebraicNorm::Vectorized => {
            let v = [d[(0, 0)], d[(0, 1)], d[(0, 2)], d[(1, 1)], d[(1, 2)]];
            v.iter().map(|x| x * x).sum()
        }
        AlgebraicNorm::Frobenius => (d * d.transpose()).trace().sqrt(),
    }
}
