use super::kernel::mirror;
use super::step::PcnnState;
use crate::error::{invalid, Result};

/// Quantized activity margin, one level per pixel in `1..=k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelImage {
    width: usize,
    height: usize,
    k: u32,
    levels: Vec<u32>,
}

impl LevelImage {
    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn levels(&self) -> &[u32] {
        &self.levels
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.levels[i * self.width + j]
    }
}

/// Output of [`hierarchical_output`].
#[derive(Clone, Debug, PartialEq)]
pub struct Hierarchy {
    pub levels: LevelImage,
    /// Shifted margin `xi = U - E - min(U - E)`.
    pub margin: Vec<f64>,
    /// Local margin variation `G[i,j] = sum |xi[i,j] - xi[i+r,j+t]|` over the
    /// 3x3 neighborhood (mirrored at the border). Diagnostic only.
    pub variation: Vec<f64>,
}

/// Quantizes `xi = U - E` into `k` levels: `level = ceil(xi / max(xi) * k)`
/// after shifting so that `min(xi) = 0`. Pixels at the minimum get level 1,
/// and a flat margin maps every pixel to level 1.
pub fn hierarchical_output(state: &PcnnState, k: u32) -> Result<Hierarchy> {
    if k == 0 {
        return invalid("hierarchy count k must be at least 1");
    }
    if state.step == 0 {
        return invalid("state must be stepped at least once");
    }
    let (w, h) = state.shape();
    let raw: Vec<f64> = state.u.iter().zip(&state.e).map(|(u, e)| u - e).collect();
    let lo = raw.iter().copied().fold(f64::INFINITY, f64::min);
    let margin: Vec<f64> = raw.iter().map(|x| x - lo).collect();
    let hi = margin.iter().copied().fold(0.0, f64::max);

    let levels = margin
        .iter()
        .map(|&x| {
            if hi <= 0.0 || x <= 0.0 {
                1
            } else {
                ((x / hi * f64::from(k)).ceil() as u32).clamp(1, k)
            }
        })
        .collect();

    let mut variation = vec![0.0; w * h];
    for i in 0..h {
        for j in 0..w {
            let x = margin[i * w + j];
            let mut g = 0.0;
            for r in -1isize..=1 {
                for t in -1isize..=1 {
                    if let (Some(a), Some(b)) = (mirror(i as isize + r, h), mirror(j as isize + t, w)) {
                        g += (x - margin[a * w + b]).abs();
                    }
                }
            }
            variation[i * w + j] = g;
        }
    }

    Ok(Hierarchy {
        levels: LevelImage { width: w, height: h, k, levels },
        margin,
        variation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::image::Mask;

    fn state_with_margin(w: usize, h: usize, margin: impl Fn(usize, usize) -> f64) -> PcnnState {
        let mut u = Vec::new();
        for i in 0..h {
            for j in 0..w {
                u.push(margin(i, j) + 0.5);
            }
        }
        let n = w * h;
        PcnnState::from_fields(w, h, u.clone(), vec![0.0; n], u, vec![0.5; n], Mask::zeros(w, h), 1).unwrap()
    }

    #[test]
    fn one_level_is_flat() {
        let st = state_with_margin(4, 4, |i, j| (i * 4 + j) as f64);
        let out = hierarchical_output(&st, 1).unwrap();
        assert!(out.levels.levels().iter().all(|&v| v == 1));
    }

    #[test]
    fn maximum_maps_to_k() {
        let st = state_with_margin(3, 3, |i, j| (i + j) as f64 * 0.37);
        let out = hierarchical_output(&st, 7).unwrap();
        assert_eq!(out.levels.get(2, 2), 7);
        assert_eq!(out.levels.get(0, 0), 1);
    }

    #[test]
    fn ramp_gives_column_bands() {
        let st = state_with_margin(4, 4, |_, j| j as f64);
        let out = hierarchical_output(&st, 4).unwrap();
        // ceil(j/3 * 4) = 0 -> 1, 1.33 -> 2, 2.67 -> 3, 4 -> 4
        for i in 0..4 {
            for (j, want) in [1, 2, 3, 4].into_iter().enumerate() {
                assert_eq!(out.levels.get(i, j), want);
            }
        }
    }

    #[test]
    fn flat_margin_is_level_one() {
        let st = state_with_margin(3, 2, |_, _| 2.0);
        let out = hierarchical_output(&st, 5).unwrap();
        assert!(out.levels.levels().iter().all(|&v| v == 1));
        assert!(out.variation.iter().all(|&g| g == 0.0));
    }

    #[test]
    fn errors() {
        let st = state_with_margin(3, 2, |_, _| 2.0);
        assert!(hierarchical_output(&st, 0).is_err());
        let mut fresh = st.clone();
        fresh.step = 0;
        assert!(hierarchical_output(&fresh, 2).is_err());
    }

    #[test]
    fn variation_of_single_peak() {
        let st = state_with_margin(3, 3, |i, j| if (i, j) == (1, 1) { 1.0 } else { 0.0 });
        let out = hierarchical_output(&st, 2).unwrap();
        assert_eq!(out.variation[4], 8.0);
        assert_eq!(out.variation[0], 4.0);
    }
}
