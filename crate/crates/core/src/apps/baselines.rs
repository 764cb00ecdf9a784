//! Classical two-class baselines: Otsu thresholding and 1-D 2-means.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{invalid, Result};
use crate::image::{Mask, Plane};
use crate::metrics::{histogram_bin, HISTOGRAM_BINS};

#[derive(Clone, Debug, PartialEq)]
pub struct OtsuResult {
    /// Last histogram bin of the dark class.
    pub bin: usize,
    /// Intensity cut `(bin + 1) / 256`; pixels in higher bins are foreground.
    pub threshold: f64,
    pub mask: Mask,
}

/// Otsu's threshold over the 256-bin histogram.
///
/// Class means are taken from the actual intensities in each bin, so a
/// well-separated image keeps its split under affine rescaling. When several
/// cuts tie for the maximum between-class variance, the middle one is used.
/// A constant image has no valid cut: the threshold sits at the bin of the
/// constant and the mask is all zero.
pub fn otsu(image: &Plane) -> OtsuResult {
    let mut count = [0usize; HISTOGRAM_BINS];
    let mut sum = [0.0f64; HISTOGRAM_BINS];
    for &v in image.data() {
        let b = histogram_bin(v);
        count[b] += 1;
        sum[b] += v;
    }
    let total_n = image.len();
    let total_sum: f64 = sum.iter().sum();

    let mut best = f64::NEG_INFINITY;
    let mut ties: Vec<usize> = Vec::new();
    let (mut n0, mut s0) = (0usize, 0.0f64);
    for t in 0..HISTOGRAM_BINS - 1 {
        n0 += count[t];
        s0 += sum[t];
        let n1 = total_n - n0;
        if n0 == 0 || n1 == 0 {
            continue;
        }
        let mu0 = s0 / n0 as f64;
        let mu1 = (total_sum - s0) / n1 as f64;
        let var = n0 as f64 * n1 as f64 * (mu0 - mu1) * (mu0 - mu1);
        if var > best {
            best = var;
            ties.clear();
            ties.push(t);
        } else if var == best {
            ties.push(t);
        }
    }

    let bin = if ties.is_empty() {
        histogram_bin(image.data()[0])
    } else {
        ties[(ties.len() - 1) / 2]
    };
    let mask = if ties.is_empty() {
        Mask::zeros(image.width(), image.height())
    } else {
        Mask::from_bools(image.width(), image.height(), image.data().iter().map(|&v| histogram_bin(v) > bin))
    };
    OtsuResult { bin, threshold: (bin + 1) as f64 / HISTOGRAM_BINS as f64, mask }
}

#[derive(Clone, Debug, PartialEq)]
pub struct KMeansResult {
    /// `(dark, bright)` cluster centers.
    pub centers: (f64, f64),
    pub iterations: usize,
    /// 1 for pixels assigned to the bright cluster.
    pub mask: Mask,
}

/// 1-D 2-means on intensities with centers started at the extremes.
///
/// Equidistant pixels join the dark cluster. If a cluster empties, its center
/// is reseeded from a pixel drawn with `seed`. A constant image forms one
/// cluster and yields an all-zero mask.
pub fn kmeans2(image: &Plane, max_iters: usize, seed: u64) -> Result<KMeansResult> {
    if max_iters == 0 {
        return invalid("max_iters must be at least 1");
    }
    let data = image.data();
    let lo = data.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = data.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let (w, h) = image.shape();
    if lo == hi {
        return Ok(KMeansResult { centers: (lo, hi), iterations: 0, mask: Mask::zeros(w, h) });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut centers = [lo, hi];
    let mut assign: Vec<u8> = vec![0; data.len()];
    let mut iterations = 0;
    for _ in 0..max_iters {
        iterations += 1;
        let mut changed = false;
        for (a, &v) in assign.iter_mut().zip(data) {
            let c = u8::from((v - centers[1]).abs() < (v - centers[0]).abs());
            changed |= *a != c;
            *a = c;
        }
        let mut sum = [0.0f64; 2];
        let mut n = [0usize; 2];
        for (&a, &v) in assign.iter().zip(data) {
            sum[a as usize] += v;
            n[a as usize] += 1;
        }
        let mut reseeded = false;
        for k in 0..2 {
            if n[k] > 0 {
                centers[k] = sum[k] / n[k] as f64;
            } else {
                centers[k] = data[rng.random_range(0..data.len())];
                reseeded = true;
            }
        }
        if !changed && iterations > 1 && !reseeded {
            break;
        }
    }
    // Label the brighter center as foreground.
    let bright = u8::from(centers[1] >= centers[0]);
    let mask = Mask::from_bools(w, h, assign.iter().map(|&a| a == bright));
    let (dark_c, bright_c) = if bright == 1 { (centers[0], centers[1]) } else { (centers[1], centers[0]) };
    Ok(KMeansResult { centers: (dark_c, bright_c), iterations, mask })
}
