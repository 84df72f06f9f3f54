//! Convex polygon primitives used by the area-overlap metrics.
//!
//! All polygons are counter-clockwise vertex lists. Intersection uses
//! Sutherland–Hodgman clipping, which is exact for convex inputs.

use nalgebra::Vector2;

type P = Vector2<f64>;

/// Signed shoelace area (positive for counter-clockwise polygons).
pub fn signed_area(pts: &[P]) -> f64 {
    if pts.len() < 3 {
        return 0.0;
    }
    let mut acc = 0.0;
    let mut prev = pts[pts.len() - 1];
    for &p in pts {
        acc += prev.x * p.y - p.x * prev.y;
        prev = p;
    }
    0.5 * acc
}

pub fn area(pts: &[P]) -> f64 {
    signed_area(pts).abs()
}

/// Area of the intersection of two convex polygons.
///
/// Clips `subject` successively against every edge of `clip` and
/// returns the area of what remains.
pub fn intersection_area(subject: &[P], clip: &[P]) -> f64 {
    if subject.len() < 3 || clip.len() < 3 {
        return 0.0;
    }
    let mut current: Vec<P> = subject.to_vec();
    let mut next: Vec<P> = Vec::with_capacity(subject.len() + 4);

    let mut edge_start = clip[clip.len() - 1];
    for &edge_end in clip {
        if current.is_empty() {
            return 0.0;
        }
        next.clear();
        let ex = edge_end.x - edge_start.x;
        let ey = edge_end.y - edge_start.y;

        let mut prev = current[current.len() - 1];
        let mut prev_side = ex * (prev.y - edge_start.y) - ey * (prev.x - edge_start.x);
        for &p in &current {
            let side = ex * (p.y - edge_start.y) - ey * (p.x - edge_start.x);
            if side >= 0.0 {
                if prev_side < 0.0 {
                    next.push(edge_intersection(prev, p, prev_side, side));
                }
                next.push(p);
            } else if prev_side >= 0.0 {
                next.push(edge_intersection(prev, p, prev_side, side));
            }
            prev = p;
            prev_side = side;
        }
        std::mem::swap(&mut current, &mut next);
        edge_start = edge_end;
    }
    area(&current)
}

#[inline]
fn edge_intersection(a: P, b: P, side_a: f64, side_b: f64) -> P {
    let t = side_a / (side_a - side_b);
    a + (b - a) * t
}

/// Area of the convex hull of a point set (monotone chain).
pub fn convex_hull_area(points: &mut Vec<P>) -> f64 {
    let n = points.len();
    if n < 3 {
        return 0.0;
    }
    points.sort_unstable_by(|a, b| {
        a.x.partial_cmp(&b.x)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.y.partial_cmp(&b.y).unwrap_or(std::cmp::Ordering::Equal))
    });

    let cross = |o: P, a: P, b: P| (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);

    let mut hull: Vec<P> = Vec::with_capacity(2 * n);
    for &p in points.iter() {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0 {
            hull.pop();
        }
        hull.push(p);
    }
    let lower_len = hull.len() + 1;
    for &p in points.iter().rev() {
        while hull.len() >= lower_len && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0
        {
            hull.pop();
        }
        hull.push(p);
    }
    hull.pop();
    area(&hull)
}
