//! Image quality measures and segmentation objectives.
//!
//! EN, AG and SF use their common textbook definitions:
//!
//! * EN: Shannon entropy in bits of a 256-bin histogram over `[0, 1]`.
//! * AG: mean of `sqrt((dx^2 + dy^2) / 2)` over pixels that have both a right
//!   and a lower neighbor (forward differences).
//! * SF: `sqrt(RF^2 + CF^2)` with RF/CF the RMS of horizontal/vertical
//!   forward differences.

use crate::error::{invalid, Result};
use crate::image::{Mask, Plane};

pub const HISTOGRAM_BINS: usize = 256;

/// The three fusion-quality terms and their sum.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MetricReport {
    pub en: f64,
    pub ag: f64,
    pub sf: f64,
    pub fitness: f64,
}

impl MetricReport {
    pub const CSV_HEADER: &'static str = "name,en,ag,sf,fitness";

    /// One CSV row `name,en,ag,sf,fitness`, no trailing newline.
    pub fn to_csv_row(&self, name: &str) -> String {
        format!("{name},{},{},{},{}", self.en, self.ag, self.sf, self.fitness)
    }
}

/// Histogram bin of an intensity in `[0, 1]`; out-of-range values clamp to
/// the end bins.
#[inline]
pub fn histogram_bin(v: f64) -> usize {
    ((v * HISTOGRAM_BINS as f64).floor().max(0.0) as usize).min(HISTOGRAM_BINS - 1)
}

pub fn histogram(image: &Plane) -> [usize; HISTOGRAM_BINS] {
    let mut h = [0usize; HISTOGRAM_BINS];
    for &v in image.data() {
        h[histogram_bin(v)] += 1;
    }
    h
}

/// Shannon entropy (bits) of the 256-bin intensity histogram.
pub fn shannon_entropy(image: &Plane) -> f64 {
    let n = image.len() as f64;
    let en: f64 = histogram(image)
        .iter()
        .filter(|&&c| c > 0)
        .map(|&c| {
            let p = c as f64 / n;
            -p * p.log2()
        })
        .sum();
    en.max(0.0)
}

pub fn average_gradient(image: &Plane) -> Result<f64> {
    let (w, h) = image.shape();
    if w < 2 || h < 2 {
        return invalid(format!("average gradient needs at least 2x2, got {w}x{h}"));
    }
    let mut acc = 0.0;
    for i in 0..h - 1 {
        for j in 0..w - 1 {
            let v = image.get(i, j);
            let dx = image.get(i, j + 1) - v;
            let dy = image.get(i + 1, j) - v;
            acc += ((dx * dx + dy * dy) / 2.0).sqrt();
        }
    }
    Ok(acc / ((w - 1) * (h - 1)) as f64)
}

/// Spatial frequency. A single row or column has no differences along the
/// other axis, and that term is 0.
pub fn spatial_frequency(image: &Plane) -> Result<f64> {
    let (w, h) = image.shape();
    if w * h < 2 {
        return invalid("spatial frequency needs at least two pixels");
    }
    let mut row = 0.0;
    for i in 0..h {
        for j in 0..w - 1 {
            let d = image.get(i, j + 1) - image.get(i, j);
            row += d * d;
        }
    }
    let mut col = 0.0;
    for i in 0..h - 1 {
        for j in 0..w {
            let d = image.get(i + 1, j) - image.get(i, j);
            col += d * d;
        }
    }
    let rf2 = if w > 1 { row / (h * (w - 1)) as f64 } else { 0.0 };
    let cf2 = if h > 1 { col / ((h - 1) * w) as f64 } else { 0.0 };
    Ok((rf2 + cf2).sqrt())
}

/// Combined fitness `SF + EN + AG`.
pub fn fusion_fitness(image: &Plane) -> Result<MetricReport> {
    let en = shannon_entropy(image);
    let ag = average_gradient(image)?;
    let sf = spatial_frequency(image)?;
    Ok(MetricReport { en, ag, sf, fitness: sf + en + ag })
}

/// Minimum cross-entropy objective of a binary partition:
/// `D = sum_{mask=1} s ln(s/mu1) + sum_{mask=0} s ln(s/mu0)`, with `mu` the
/// class means. Empty classes and zero intensities contribute nothing.
/// The result is never negative.
pub fn cross_entropy(image: &Plane, mask: &Mask) -> Result<f64> {
    if image.shape() != mask.shape() {
        return invalid("image and mask shapes differ");
    }
    let mut sum = [0.0f64; 2];
    let mut count = [0usize; 2];
    for (&s, &m) in image.data().iter().zip(mask.data()) {
        sum[m as usize] += s;
        count[m as usize] += 1;
    }
    let mean = [
        if count[0] > 0 { sum[0] / count[0] as f64 } else { 0.0 },
        if count[1] > 0 { sum[1] / count[1] as f64 } else { 0.0 },
    ];
    let mut d = 0.0;
    for (&s, &m) in image.data().iter().zip(mask.data()) {
        if s > 0.0 {
            d += s * (s / mean[m as usize]).ln();
        }
    }
    // Nonnegative in exact arithmetic; drop rounding noise below zero.
    Ok(d.max(0.0))
}

/// Peak signal-to-noise ratio in dB for `[0, 1]` intensities. Identical
/// inputs return `f64::INFINITY`.
pub fn psnr(reference: &Plane, candidate: &Plane) -> Result<f64> {
    if reference.shape() != candidate.shape() {
        return invalid("psnr inputs differ in shape");
    }
    let mse = reference
        .data()
        .iter()
        .zip(candidate.data())
        .map(|(a, b)| (a - b) * (a - b))
        .sum::<f64>()
        / reference.len() as f64;
    if mse == 0.0 {
        return Ok(f64::INFINITY);
    }
    Ok(10.0 * (1.0 / mse).log10())
}

/// Fraction of mismatched pixels, minimized over swapping the labels of
/// `predicted`.
pub fn misclassification_error(predicted: &Mask, truth: &Mask) -> Result<f64> {
    if predicted.shape() != truth.shape() {
        return invalid("mask shapes differ");
    }
    let diff = predicted.data().iter().zip(truth.data()).filter(|(a, b)| a != b).count();
    let n = truth.len();
    Ok(diff.min(n - diff) as f64 / n as f64)
}
