use super::params::{PcnnParams, Variant};
use crate::error::{invalid, Result};
use crate::image::Mask;

/// Binary output frames `Y[1..=N]` of one run.
#[derive(Clone, Debug, PartialEq)]
pub struct PulseSequence {
    pub params: PcnnParams,
    pub variant: Variant,
    frames: Vec<Mask>,
    width: usize,
    height: usize,
}

impl PulseSequence {
    pub fn new(params: PcnnParams, variant: Variant, frames: Vec<Mask>) -> Result<Self> {
        let Some(first) = frames.first() else {
            return invalid("pulse sequence needs at least one frame");
        };
        let (width, height) = first.shape();
        if frames.iter().any(|f| f.shape() != (width, height)) {
            return invalid("all frames must share one shape");
        }
        Ok(PulseSequence { params, variant, frames, width, height })
    }

    pub fn frames(&self) -> &[Mask] {
        &self.frames
    }

    /// Frame `n`, 1-based.
    pub fn frame(&self, n: usize) -> Option<&Mask> {
        n.checked_sub(1).and_then(|k| self.frames.get(k))
    }

    pub fn len(&self) -> usize {
        self.frames.len()
    }

    pub fn is_empty(&self) -> bool {
        self.frames.is_empty()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.width, self.height)
    }
}

/// Per-pixel firing iteration (1-based); 0 means the pixel did not fire in
/// the frames considered.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FireTimeMap {
    width: usize,
    height: usize,
    times: Vec<usize>,
}

impl FireTimeMap {
    /// Earliest frame in `from..=N` where each pixel fires.
    pub fn from_frame(seq: &PulseSequence, from: usize) -> Self {
        let (w, h) = seq.shape();
        let mut times = vec![0usize; w * h];
        for (k, frame) in seq.frames().iter().enumerate().skip(from.max(1) - 1) {
            for (t, &y) in times.iter_mut().zip(frame.data()) {
                if *t == 0 && y == 1 {
                    *t = k + 1;
                }
            }
        }
        FireTimeMap { width: w, height: h, times }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn times(&self) -> &[usize] {
        &self.times
    }

    pub fn get(&self, i: usize, j: usize) -> usize {
        self.times[i * self.width + j]
    }

    /// Fire times with "never" mapped to `horizon` (usually `N + 1`), so that
    /// silent pixels compare as later than every firing pixel.
    pub fn with_never_as(&self, horizon: usize) -> Vec<usize> {
        self.times.iter().map(|&t| if t == 0 { horizon } else { t }).collect()
    }
}

/// First frame in which each pixel fires.
pub fn first_fire_times(seq: &PulseSequence) -> FireTimeMap {
    FireTimeMap::from_frame(seq, 1)
}

/// First firing after the synchronous start-up pulse, i.e. the earliest
/// frame `>= 2`. Starting from a zero threshold every neuron fires in frame
/// 1, so this is where the stimulus ordering shows up.
pub fn capture_times(seq: &PulseSequence) -> FireTimeMap {
    FireTimeMap::from_frame(seq, 2)
}

/// Number of fired pixels in each frame.
pub fn time_signature(seq: &PulseSequence) -> Vec<usize> {
    seq.frames().iter().map(Mask::count_ones).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(frames: Vec<Mask>) -> PulseSequence {
        PulseSequence::new(PcnnParams::default(), Variant::Simplified, frames).unwrap()
    }

    #[test]
    fn rejects_empty_or_ragged() {
        assert!(PulseSequence::new(PcnnParams::default(), Variant::Full, vec![]).is_err());
        assert!(PulseSequence::new(
            PcnnParams::default(),
            Variant::Full,
            vec![Mask::zeros(2, 2), Mask::zeros(3, 2)]
        )
        .is_err());
    }

    #[test]
    fn first_fire() {
        let mut f2 = Mask::zeros(3, 1);
        f2.set(0, 1, true);
        let s = seq(vec![Mask::ones(3, 1), f2, Mask::zeros(3, 1)]);
        assert_eq!(first_fire_times(&s).times(), &[1, 1, 1]);
        assert_eq!(capture_times(&s).times(), &[0, 2, 0]);
        assert_eq!(capture_times(&s).with_never_as(4), vec![4, 2, 4]);
    }

    #[test]
    fn never_firing_is_zero() {
        let mut f1 = Mask::zeros(2, 1);
        f1.set(0, 0, true);
        let s = seq(vec![f1, Mask::zeros(2, 1)]);
        assert_eq!(first_fire_times(&s).times(), &[1, 0]);
    }

    #[test]
    fn signature_counts() {
        let s = seq(vec![Mask::ones(8, 8), Mask::zeros(8, 8)]);
        assert_eq!(time_signature(&s), vec![64, 0]);
        assert_eq!(s.frame(1).unwrap().count_ones(), 64);
        assert!(s.frame(0).is_none());
    }
}
