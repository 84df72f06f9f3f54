use ellipose_geometry::{clip_ellipse_to_image, ellipse_bbox, Bbox, Ellipse};

use crate::{MetricContext, MetricError, MetricKind};

fn corners_sq_error(b1: &Bbox, b2: &Bbox) -> f64 {
    b1.as_array()
        .iter()
        .zip(b2.as_array().iter())
        .map(|(x, y)| (x - y) * (x - y))
        .sum()
}

/// Quadratic error between the corner coordinates of the two tight
/// axis-aligned bounding boxes: `‖B₁ − B₂‖²` over
/// `(min_x, min_y, max_x, max_y)`.
///
/// Many ellipses share the same box, so a zero distance does not imply
/// aligned ellipses.
pub fn bbox_distance(e1: &Ellipse, e2: &Ellipse) -> f64 {
    corners_sq_error(&ellipse_bbox(e1), &ellipse_bbox(e2))
}

/// Bounding-box error after clipping both boxes to the image rectangle,
/// the treatment used for objects partially outside the image.
///
/// Fails with `EmptyIntersection` when either ellipse lies entirely
/// off-image.
pub fn qbbox_distance(
    e1: &Ellipse,
    e2: &Ellipse,
    ctx: &MetricContext,
) -> Result<f64, MetricError> {
    let size = ctx
        .image_size
        .ok_or(MetricError::MissingImageSize(MetricKind::QBbox))?;
    let b1 = clip_ellipse_to_image(e1, size)?;
    let b2 = clip_ellipse_to_image(e2, size)?;
    Ok(corners_sq_error(&b1, &b2))
}
