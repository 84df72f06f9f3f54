//! Cross-metric property checks on random ellipse pairs.

use ellipose_geometry::Ellipse;
use ellipose_metrics::{distance, MetricContext, MetricKind};
use nalgebra::Vector2;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_ellipse(rng: &mut ChaCha8Rng) -> Ellipse {
    Ellipse::new(
        rng.gen_range(100.0..500.0),
        rng.gen_range(100.0..380.0),
        rng.gen_range(15.0..70.0),
        rng.gen_range(15.0..70.0),
        rng.gen_range(-1.5..1.5),
    )
    .unwrap()
}

#[test]
fn nonnegative_and_zero_at_identity() {
    let ctx = MetricContext::with_image_size(640.0, 480.0);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..100 {
        let e = random_ellipse(&mut rng);
        // Closed-form metrics are exact up to round-off, which scales with
        // the squared axis lengths entering the dual forms and covariances.
        let scale = e.major() * e.major() + e.center().norm_squared();
        for kind in MetricKind::ALL {
            let d = distance(kind, &e, &e, &ctx).unwrap();
            let tol = match kind {
                MetricKind::IoU | MetricKind::GIoU => 1e-6,
                _ => 1e-12 * (1.0 + scale),
            };
            assert!(d >= 0.0 && d <= tol, "{kind} identity: {d}");
        }
    }
}

#[test]
fn symmetry_table() {
    // Symmetric: IoU, GIoU, Bbox, AlgebraicVec, AlgebraicFro, Wasserstein,
    // Bhattacharyya. LevelSet is anchored on its first argument.
    let ctx = MetricContext::with_image_size(640.0, 480.0);
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let symmetric = [
        MetricKind::IoU,
        MetricKind::GIoU,
        MetricKind::Bbox,
        MetricKind::AlgebraicVec,
        MetricKind::AlgebraicFro,
        MetricKind::Wasserstein,
        MetricKind::Bhattacharyya,
    ];
    let mut level_set_asymmetric = 0usize;
    for _ in 0..100 {
        let a = random_ellipse(&mut rng);
        let b = random_ellipse(&mut rng);
        for kind in symmetric {
            let ab = distance(kind, &a, &b, &ctx).unwrap();
            let ba = distance(kind, &b, &a, &ctx).unwrap();
            assert!(
                (ab - ba).abs() <= 1e-9 * (1.0 + ab.abs()),
                "{kind} should be symmetric: {ab} vs {ba}"
            );
        }
        let ab = distance(MetricKind::LevelSet, &a, &b, &ctx).unwrap();
        let ba = distance(MetricKind::LevelSet, &b, &a, &ctx).unwrap();
        if (ab - ba).abs() > 1e-9 * (1.0 + ab.abs()) {
            level_set_asymmetric += 1;
        }
    }
    assert!(
        level_set_asymmetric > 90,
        "level-set should be asymmetric for generic pairs, got {level_set_asymmetric}/100"
    );
}

#[test]
fn translation_invariance_table() {
    // Invariant under joint translation: IoU, GIoU, Bbox, QBbox (interior),
    // Wasserstein, Bhattacharyya, LevelSet. The algebraic metrics change.
    let ctx = MetricContext::with_image_size(10_000.0, 10_000.0);
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let invariant = [
        MetricKind::IoU,
        MetricKind::GIoU,
        MetricKind::Bbox,
        MetricKind::QBbox,
        MetricKind::Wasserstein,
        MetricKind::Bhattacharyya,
        MetricKind::LevelSet,
    ];
    let mut algebraic_changed = [0usize; 2];
    for _ in 0..100 {
        let a = random_ellipse(&mut rng);
        let b = random_ellipse(&mut rng);
        // Keep both clipped boxes interior for QBbox.
        let t = Vector2::new(rng.gen_range(100.0..2000.0), rng.gen_range(100.0..2000.0));
        let at = a.transformed(0.0, t);
        let bt = b.transformed(0.0, t);
        for kind in invariant {
            let before = distance(kind, &a, &b, &ctx).unwrap();
            let after = distance(kind, &at, &bt, &ctx).unwrap();
            assert!(
                (before - after).abs() <= 1e-6 * (1.0 + before.abs()),
                "{kind} should be translation invariant: {before} vs {after}"
            );
        }
        for (i, kind) in [MetricKind::AlgebraicVec, MetricKind::AlgebraicFro]
            .into_iter()
            .enumerate()
        {
            let before = distance(kind, &a, &b, &ctx).unwrap();
            let after = distance(kind, &at, &bt, &ctx).unwrap();
            if (before - after).abs() > 1e-6 * (1.0 + before.abs()) {
                algebraic_changed[i] += 1;
            }
        }
    }
    assert_eq!(algebraic_changed, [100, 100], "algebraic metrics must move");
}

#[test]
fn level_set_outgrows_giou_with_separation() {
    // Ratio growth across separations d ∈ {2, 4, 8} for unit circles.
    let ctx = MetricContext::default();
    let a = Ellipse::circle(0.0, 0.0, 1.0).unwrap();
    let at = |d: f64| Ellipse::circle(d, 0.0, 1.0).unwrap();

    let lvs: Vec<f64> = [2.0, 4.0, 8.0]
        .iter()
        .map(|&d| distance(MetricKind::LevelSet, &a, &at(d), &ctx).unwrap())
        .collect();
    let giou: Vec<f64> = [2.0, 4.0, 8.0]
        .iter()
        .map(|&d| distance(MetricKind::GIoU, &a, &at(d), &ctx).unwrap())
        .collect();

    for i in 1..3 {
        let lvs_ratio = lvs[i] / lvs[0];
        let giou_ratio = giou[i] / giou[0];
        assert!(
            lvs_ratio > giou_ratio,
            "level-set ratio {lvs_ratio} should exceed GIoU ratio {giou_ratio}"
        );
    }
}

#[test]
fn polygon_iou_vs_monte_carlo() {
    // Spot check on a handful of random pairs; the full 100-pair sweep at
    // 1e7 samples runs in the acceptance suite.
    let ctx = MetricContext::default();
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for _ in 0..5 {
        let a = random_ellipse(&mut rng);
        let mut b = random_ellipse(&mut rng);
        // Bias toward overlap so that the interesting branch is exercised.
        b = Ellipse::new(
            a.center().x + rng.gen_range(-40.0..40.0),
            a.center().y + rng.gen_range(-40.0..40.0),
            b.major(),
            b.minor(),
            b.angle(),
        )
        .unwrap();

        let bb1 = ellipose_geometry::ellipse_bbox(&a);
        let bb2 = ellipose_geometry::ellipse_bbox(&b);
        let (x0, y0) = (bb1.min_x.min(bb2.min_x), bb1.min_y.min(bb2.min_y));
        let (x1, y1) = (bb1.max_x.max(bb2.max_x), bb1.max_y.max(bb2.max_y));

        let n = 2_000_000usize;
        let (mut union, mut inter) = (0u64, 0u64);
        for _ in 0..n {
            let p = Vector2::new(rng.gen_range(x0..x1), rng.gen_range(y0..y1));
            let ia = ellipose_geometry::embedding_value(&a, p) <= 1.0;
            let ib = ellipose_geometry::embedding_value(&b, p) <= 1.0;
            union += (ia || ib) as u64;
            inter += (ia && ib) as u64;
        }
        let mc = 1.0 - inter as f64 / union as f64;
        let poly = distance(MetricKind::IoU, &a, &b, &ctx).unwrap();
        assert!(
            (mc - poly).abs() < 2e-3,
            "IoU mismatch: polygon {poly} vs monte carlo {mc}"
        );
    }
}
