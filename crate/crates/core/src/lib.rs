//! Pulse-coupled neural network simulator for grayscale images.
//!
//! The [`model`] module holds the lattice dynamics; [`apps`] builds
//! segmentation, edge detection and denoising on top of pulse sequences;
//! [`metrics`] and [`autoparam`] score results and suggest parameters.

pub mod apps;
pub mod autoparam;
mod error;
pub mod image;
pub mod imgio;
pub mod metrics;
pub mod model;

pub use error::{Error, Result};
pub use image::{GrayImage, Mask, Plane, EPSILON};
pub use model::{run, PcnnParams, PulseSequence, Variant};
