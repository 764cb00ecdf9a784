use crate::error::{invalid, Result};
use crate::image::{GrayImage, EPSILON};

/// Per-pixel squared backward differences `(I[i,j]-I[i-1,j])^2 + (I[i,j]-I[i,j-1])^2`,
/// min-max normalized into `[EPSILON, 1]` for use as a stimulus.
///
/// Neighbors outside the lattice are taken to equal the pixel itself. A flat
/// input has no spread to normalize and maps to `EPSILON` everywhere.
pub fn spatial_frequency_feeding(image: &GrayImage) -> Result<GrayImage> {
    let (w, h) = image.shape();
    if w < 2 || h < 2 {
        return invalid(format!("spatial frequency feeding needs at least 2x2, got {w}x{h}"));
    }
    let raw: Vec<f64> = (0..h)
        .flat_map(|i| (0..w).map(move |j| (i, j)))
        .map(|(i, j)| {
            let v = image.get(i, j);
            let up = if i > 0 { v - image.get(i - 1, j) } else { 0.0 };
            let left = if j > 0 { v - image.get(i, j - 1) } else { 0.0 };
            up * up + left * left
        })
        .collect();
    let lo = raw.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = raw.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let span = hi - lo;
    let data = if span > 0.0 {
        raw.iter().map(|v| EPSILON + (v - lo) / span * (1.0 - EPSILON)).collect()
    } else {
        vec![EPSILON; raw.len()]
    };
    GrayImage::clamped(w, h, data)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_maps_to_epsilon() {
        let out = spatial_frequency_feeding(&GrayImage::uniform(4, 3, 0.7).unwrap()).unwrap();
        assert!(out.data().iter().all(|&v| v == EPSILON));
    }

    #[test]
    fn step_edge_peaks_on_step_column() {
        let img = GrayImage::from_fn(6, 5, |_, j| if j >= 3 { 0.9 } else { 0.2 }).unwrap();
        let out = spatial_frequency_feeding(&img).unwrap();
        for i in 0..5 {
            for j in 0..6 {
                if j == 3 {
                    assert_eq!(out.get(i, j), 1.0);
                } else {
                    assert_eq!(out.get(i, j), EPSILON);
                }
            }
        }
    }

    #[test]
    fn single_raised_pixel_scales_quadratically() {
        // Raw values before normalization: the raised pixel gets 2 * delta^2.
        let raw_peak = |delta: f64| {
            let img = GrayImage::from_fn(5, 5, |i, j| if (i, j) == (2, 2) { 0.3 + delta } else { 0.3 }).unwrap();
            let v = img.get(2, 2);
            (v - img.get(1, 2)).powi(2) + (v - img.get(2, 1)).powi(2)
        };
        let r = raw_peak(0.2) / raw_peak(0.1);
        assert!((r - 4.0).abs() < 1e-9);
        let img = GrayImage::from_fn(5, 5, |i, j| if (i, j) == (2, 2) { 0.5 } else { 0.3 }).unwrap();
        let out = spatial_frequency_feeding(&img).unwrap();
        assert_eq!(out.get(2, 2), 1.0);
    }

    #[test]
    fn rejects_degenerate_shape() {
        assert!(spatial_frequency_feeding(&GrayImage::uniform(1, 1, 0.5).unwrap()).is_err());
        assert!(spatial_frequency_feeding(&GrayImage::uniform(5, 1, 0.5).unwrap()).is_err());
    }
}
