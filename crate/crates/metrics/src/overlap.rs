use ellipose_geometry::Ellipse;

use crate::polygon::{area, convex_hull_area, intersection_area};
use crate::MetricContext;

/// Jaccard distance `1 − |∩| / |∪|`, in [0, 1].
///
/// Areas come from exact convex-polygon intersection of inscribed
/// N-gons (N = `ctx.polygon_resolution`). Disjoint ellipses score
/// exactly 1 no matter how far apart they are.
pub fn iou_distance(e1: &Ellipse, e2: &Ellipse, ctx: &MetricContext) -> f64 {
    let n = ctx.resolution();
    let p1 = e1.polygon(n);
    let p2 = e2.polygon(n);
    let inter = intersection_area(&p1, &p2);
    let union = area(&p1) + area(&p2) - inter;
    if union <= 0.0 {
        return 0.0;
    }
    1.0 - inter / union
}

/// Generalized IoU distance `1 − (IoU − |C∖(E1∪E2)| / |C|)`, in [0, 2],
/// where `C` is the convex hull of both shapes. Unlike plain IoU it
/// keeps decreasing as disjoint ellipses approach each other.
pub fn giou_distance(e1: &Ellipse, e2: &Ellipse, ctx: &MetricContext) -> f64 {
    let n = ctx.resolution();
    let p1 = e1.polygon(n);
    let p2 = e2.polygon(n);
    let inter = intersection_area(&p1, &p2);
    let union = area(&p1) + area(&p2) - inter;
    if union <= 0.0 {
        return 0.0;
    }
    let iou = inter / union;

    let mut all = p1;
    all.extend_from_slice(&p2);
    let hull = convex_hull_area(&mut all);
    let excess = if hull > 0.0 {
        (hull - union).max(0.0) / hull
    } else {
        0.0
    };
    1.0 - (iou - excess)
}
