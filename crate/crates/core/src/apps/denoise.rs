use crate::error::{invalid, Result};
use crate::image::{GrayImage, Mask};
use crate::model::{capture_times, run, PcnnParams, Variant};

/// Default fire-time deviation threshold.
pub const DEFAULT_TAU: usize = 2;

#[derive(Clone, Debug, PartialEq)]
pub struct DenoiseResult {
    pub image: GrayImage,
    /// Number of pixels whose value changed.
    pub repaired_count: usize,
    /// Pixels flagged as impulse-noise candidates.
    pub candidate_map: Mask,
}

/// Parameters for impulse detection: slow threshold decay so that small
/// intensity jumps still separate in time, and weak linking so a noisy pixel
/// does not pull its neighbors along.
pub fn denoise_params() -> PcnnParams {
    PcnnParams { alpha_e: 0.02, v_e: 20.0, v_l: 1.0, beta: 0.1, iters: 240, ..PcnnParams::default() }
}

/// Lower median (element `(n - 1) / 2` of the sorted values).
fn lower_median<T: PartialOrd + Copy>(values: &mut [T]) -> T {
    values.sort_by(|a, b| a.partial_cmp(b).expect("comparable values"));
    values[(values.len() - 1) / 2]
}

fn window(h: usize, w: usize, i: usize, j: usize, r: usize) -> impl Iterator<Item = usize> {
    let rows = i.saturating_sub(r)..(i + r + 1).min(h);
    let cols = j.saturating_sub(r)..(j + r + 1).min(w);
    rows.flat_map(move |a| cols.clone().map(move |b| a * w + b))
}

/// Median over the `(2r+1)^2` window, truncated at the border. Even-sized
/// windows use the lower median, so outputs are always input samples.
pub fn median_filter(image: &GrayImage, radius: usize) -> Result<GrayImage> {
    if radius == 0 {
        return invalid("median radius must be at least 1");
    }
    let (w, h) = image.shape();
    let data = image.data();
    let mut out = Vec::with_capacity(data.len());
    let mut buf = Vec::with_capacity((2 * radius + 1).pow(2));
    for i in 0..h {
        for j in 0..w {
            buf.clear();
            buf.extend(window(h, w, i, j, radius).map(|k| data[k]));
            out.push(lower_median(&mut buf));
        }
    }
    GrayImage::new(w, h, out)
}

/// Impulse-noise removal guided by fire times.
///
/// Runs the simplified network for `params.iters` steps. A pixel is a noise
/// candidate when its fire time (after the start-up pulse; never-firing
/// pixels count as `N + 1`) differs from the median fire time of its 3x3
/// neighborhood by more than `tau`. Candidates are replaced by the 3x3
/// intensity median; every other pixel is left untouched.
pub fn denoise(image: &GrayImage, params: &PcnnParams, tau: usize) -> Result<DenoiseResult> {
    if tau == 0 {
        return invalid("tau must be at least 1");
    }
    let seq = run(image, params, Variant::Simplified, params.iters)?;
    let times = capture_times(&seq).with_never_as(seq.len() + 1);
    let (w, h) = image.shape();
    let data = image.data();

    let mut tbuf = Vec::with_capacity(9);
    let candidate_map = Mask::from_fn(w, h, |i, j| {
        tbuf.clear();
        tbuf.extend(window(h, w, i, j, 1).map(|k| times[k]));
        let med = lower_median(&mut tbuf);
        times[i * w + j].abs_diff(med) > tau
    });

    let mut out = data.to_vec();
    let mut vbuf = Vec::with_capacity(9);
    let mut repaired_count = 0;
    for i in 0..h {
        for j in 0..w {
            if !candidate_map.get(i, j) {
                continue;
            }
            vbuf.clear();
            vbuf.extend(window(h, w, i, j, 1).map(|k| data[k]));
            let m = lower_median(&mut vbuf);
            if m != data[i * w + j] {
                repaired_count += 1;
            }
            out[i * w + j] = m;
        }
    }
    Ok(DenoiseResult { image: GrayImage::new(w, h, out)?, repaired_count, candidate_map })
}
