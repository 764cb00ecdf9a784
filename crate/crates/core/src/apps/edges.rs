use crate::image::Mask;
use crate::model::{capture_times, PulseSequence};

/// Marks pixels whose fire time differs from at least one 4-neighbor.
///
/// Fire times are counted after the start-up pulse (see
/// [`capture_times`]); pixels that never fire share a common "late" time.
pub fn edge_map(seq: &PulseSequence) -> Mask {
    let (w, h) = seq.shape();
    let times = capture_times(seq).with_never_as(seq.len() + 1);
    Mask::from_fn(w, h, |i, j| {
        let t = times[i * w + j];
        (i > 0 && times[(i - 1) * w + j] != t)
            || (i + 1 < h && times[(i + 1) * w + j] != t)
            || (j > 0 && times[i * w + j - 1] != t)
            || (j + 1 < w && times[i * w + j + 1] != t)
    })
}
