//! Segmentation, edge detection and impulse-noise removal built on pulse
//! sequences, plus the classical baselines they are compared against.

mod baselines;
mod denoise;
mod edges;
mod segment;

pub use baselines::{kmeans2, otsu, KMeansResult, OtsuResult};
pub use denoise::{denoise, denoise_params, median_filter, DenoiseResult, DEFAULT_TAU};
pub use edges::edge_map;
pub use segment::{cumulative_masks, segment, segment_sequence, segmentation_params, SegmentationResult};
