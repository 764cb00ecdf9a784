use crate::error::{invalid, Result};
use crate::image::{GrayImage, Mask};
use crate::metrics::cross_entropy;
use crate::model::{run, PcnnParams, PulseSequence, Variant};

#[derive(Clone, Debug, PartialEq)]
pub struct SegmentationResult {
    pub mask: Mask,
    /// 1-based iteration whose mask minimizes the cross-entropy.
    pub chosen_iteration: usize,
    /// Cross-entropy of the mask at each iteration, `curve[n - 1]` for iteration `n`.
    pub cross_entropy_curve: Vec<f64>,
}

impl SegmentationResult {
    pub fn min_cross_entropy(&self) -> f64 {
        self.cross_entropy_curve[self.chosen_iteration - 1]
    }

    /// `iteration,cross_entropy` rows with a header line.
    pub fn curve_csv(&self) -> String {
        let mut out = String::from("iteration,cross_entropy\n");
        for (k, d) in self.cross_entropy_curve.iter().enumerate() {
            out.push_str(&format!("{},{}\n", k + 1, d));
        }
        out
    }
}

/// Parameters tuned for two-class segmentation: a slow threshold decay for
/// fine intensity resolution and enough linking for neighbors to capture
/// noisy members of an already-firing region.
pub fn segmentation_params() -> PcnnParams {
    PcnnParams { alpha_e: 0.02, v_e: 20.0, v_l: 1.0, beta: 0.4, iters: 240, ..PcnnParams::default() }
}

/// Mask at each iteration. Iteration 1 is the synchronous start-up pulse;
/// from iteration 2 on, the mask is every pixel that has fired at least once
/// since that pulse.
pub fn cumulative_masks(seq: &PulseSequence) -> Vec<Mask> {
    let frames = seq.frames();
    let mut masks = Vec::with_capacity(frames.len());
    masks.push(frames[0].clone());
    let (w, h) = seq.shape();
    let mut acc = Mask::zeros(w, h);
    for frame in &frames[1..] {
        acc.union_with(frame);
        masks.push(acc.clone());
    }
    masks
}

/// Picks the iteration whose cumulative mask minimizes the cross-entropy
/// against `image`. Ties go to the earlier iteration.
pub fn segment_sequence(image: &GrayImage, seq: &PulseSequence) -> Result<SegmentationResult> {
    if seq.shape() != image.shape() {
        return invalid("pulse sequence and image shapes differ");
    }
    let masks = cumulative_masks(seq);
    let curve = masks.iter().map(|m| cross_entropy(image, m)).collect::<Result<Vec<f64>>>()?;
    let mut best = 0;
    for (k, d) in curve.iter().enumerate() {
        if *d < curve[best] {
            best = k;
        }
    }
    let mask = masks.into_iter().nth(best).expect("index within masks");
    assert!(mask.count_ones() > 0 || best > 0, "no pixel fired");
    Ok(SegmentationResult { mask, chosen_iteration: best + 1, cross_entropy_curve: curve })
}

/// Runs the network for `n` iterations and returns the cross-entropy-selected
/// segmentation.
pub fn segment(image: &GrayImage, params: &PcnnParams, variant: Variant, n: usize) -> Result<SegmentationResult> {
    let seq = run(image, params, variant, n)?;
    segment_sequence(image, &seq)
}
