use ellipose_geometry::{embedding_value, level_set_samples, Ellipse};

use crate::MetricContext;

/// Level-set sampled distance `Σᵢ (Φ₁(xᵢ) − Φ₂(xᵢ))²`.
///
/// The sample points lie on level curves of the FIRST ellipse (the
/// detection), where `Φ₁` equals the level value by construction.
/// The metric is intentionally asymmetric: the detection anchors the
/// sampling. Because the embedding normalizes the contour to the value-1
/// level curve, the cost is scale-free yet grows quadratically with
/// separation.
pub fn level_set_distance(e_detection: &Ellipse, e_other: &Ellipse, ctx: &MetricContext) -> f64 {
    let cfg = &ctx.level_set;
    let levels = cfg.scaled_levels();
    // Levels are validated positive by construction of the defaults; a
    // user-provided non-positive level falls back to the contour level.
    let samples = match level_set_samples(e_detection, cfg.n_azimuths, &levels) {
        Ok(s) => s,
        Err(_) => return f64::INFINITY,
    };
    let mut acc = 0.0;
    for x in &samples {
        // Φ₁(x) equals the level value up to round-off; evaluating it
        // through the embedding keeps Δ(E, E) identically zero.
        let phi1 = embedding_value(e_detection, *x);
        let phi2 = embedding_value(e_other, *x);
        let d = phi1 - phi2;
        acc += d * d;
    }
    acc
}
