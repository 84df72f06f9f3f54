//! Ellipse-ellipse distances usable as optimization costs.
//!
//! Nine metrics behind one interface: area overlaps (IoU, GIoU),
//! bounding-box errors (plain and image-clipped), algebraic errors on
//! dual-form matrices, Gaussian distribution distances (Wasserstein,
//! Bhattacharyya) and the level-set sampled distance. All functions are
//! pure; a [`MetricContext`] carries the shared read-only configuration.

mod algebraic;
mod boxes;
mod gaussian;
mod level_set;
mod overlap;
pub mod polygon;

pub use algebraic::{algebraic_distance, AlgebraicNorm};
pub use boxes::{bbox_distance, qbbox_distance};
pub use gaussian::{bhattacharyya_distance, spd_sqrt_2x2, wasserstein_distance};
pub use level_set::level_set_distance;
pub use overlap::{giou_distance, iou_distance};

use ellipose_geometry::{Ellipse, GeometryError};
use thiserror::Error;

/// Identifies a metric; carries no data beyond the choice itself.
/// `QBbox` requires an image size in the context and `LevelSet` reads
/// its sampling configuration from the context.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MetricKind {
    IoU,
    GIoU,
    Bbox,
    QBbox,
    AlgebraicVec,
    AlgebraicFro,
    Wasserstein,
    Bhattacharyya,
    LevelSet,
}

impl MetricKind {
    /// All metric kinds, in presentation order.
    pub const ALL: [MetricKind; 9] = [
        MetricKind::IoU,
        MetricKind::GIoU,
        MetricKind::Bbox,
        MetricKind::QBbox,
        MetricKind::AlgebraicVec,
        MetricKind::AlgebraicFro,
        MetricKind::Wasserstein,
        MetricKind::Bhattacharyya,
        MetricKind::LevelSet,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            MetricKind::IoU => "iou",
            MetricKind::GIoU => "giou",
            MetricKind::Bbox => "bbox",
            MetricKind::QBbox => "qbbox",
            MetricKind::AlgebraicVec => "algebraic-vec",
            MetricKind::AlgebraicFro => "algebraic-fro",
            MetricKind::Wasserstein => "wasserstein",
            MetricKind::Bhattacharyya => "bhattacharyya",
            MetricKind::LevelSet => "levelset",
        }
    }
}

impl std::fmt::Display for MetricKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for MetricKind {
    type Err = UnknownMetric;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        MetricKind::ALL
            .iter()
            .find(|m| m.name() == s)
            .copied()
            .ok_or_else(|| UnknownMetric(s.to_string()))
    }
}

/// Raised when parsing a metric name fails; the message lists the valid names.
#[derive(Debug, Clone, Error)]
#[error("unknown metric {0:?}; valid metrics: iou, giou, bbox, qbbox, algebraic-vec, algebraic-fro, wasserstein, bhattacharyya, levelset")]
pub struct UnknownMetric(pub String);

/// Sampling configuration for the level-set distance.
///
/// Default: 6 azimuths and levels {0.25, 1, 2.25, 4} — 24 points.
/// `scale` multiplies the levels to widen or tighten the sampled band.
#[derive(Debug, Clone, PartialEq)]
pub struct LevelSetConfig {
    pub n_azimuths: usize,
    pub levels: Vec<f64>,
    pub scale: f64,
}

impl Default for LevelSetConfig {
    fn default() -> Self {
        Self {
            n_azimuths: ellipose_geometry::DEFAULT_AZIMUTHS,
            levels: ellipose_geometry::DEFAULT_LEVELS.to_vec(),
            scale: 1.0,
        }
    }
}

impl LevelSetConfig {
    /// Level values after applying the scale multiplier.
    pub fn scaled_levels(&self) -> Vec<f64> {
        self.levels.iter().map(|&s| s * self.scale).collect()
    }

    pub fn sample_count(&self) -> usize {
        self.n_azimuths * self.levels.len()
    }
}

/// Shared read-only state for metric evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricContext {
    /// Image size `(w, h)` in pixels; required by `QBbox`.
    pub image_size: Option<(f64, f64)>,
    /// Vertex count of the polygon approximations used by IoU / GIoU.
    /// Values below 16 are treated as 16.
    pub polygon_resolution: usize,
    pub level_set: LevelSetConfig,
}

impl Default for MetricContext {
    fn default() -> Self {
        Self {
            image_size: None,
            polygon_resolution: 256,
            level_set: LevelSetConfig::default(),
        }
    }
}

impl MetricContext {
    pub fn with_image_size(w: f64, h: f64) -> Self {
        Self {
            image_size: Some((w, h)),
            ..Self::default()
        }
    }

    pub(crate) fn resolution(&self) -> usize {
        self.polygon_resolution.max(16)
    }
}

/// Errors raised by metric evaluation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum MetricError {
    #[error("metric {0} requires an image size in the context")]
    MissingImageSize(MetricKind),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// Evaluate a metric between a detection (first argument, the anchor for
/// asymmetric metrics) and another ellipse.
pub fn distance(
    kind: MetricKind,
    detection: &Ellipse,
    other: &Ellipse,
    ctx: &MetricContext,
) -> Result<f64, MetricError> {
    match kind {
        MetricKind::IoU => Ok(iou_distance(detection, other, ctx)),
        MetricKind::GIoU => Ok(giou_distance(detection, other, ctx)),
        MetricKind::Bbox => Ok(bbox_distance(detection, other)),
        MetricKind::QBbox => qbbox_distance(detection, other, ctx),
        MetricKind::AlgebraicVec => {
            Ok(algebraic_distance(detection, other, AlgebraicNorm::Vectorized))
        }
        MetricKind::AlgebraicFro => {
            Ok(algebraic_distance(detection, other, AlgebraicNorm::Frobenius))
        }
        MetricKind::Wasserstein => Ok(wasserstein_distance(detection, other)),
        MetricKind::Bhattacharyya => Ok(bhattacharyya_distance(detection, other)),
        MetricKind::LevelSet => Ok(level_set_distance(detection, other, ctx)),
    }
}
