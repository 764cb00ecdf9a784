use crate::error::{invalid, Result};
use crate::image::Mask;

/// Square inverse-distance coupling kernel of side `2 * radius + 1`.
///
/// The weight at offset `(a, b)` is `1 / sqrt(a^2 + b^2)`; the center is 0,
/// so a neuron never couples to itself.
#[derive(Clone, Debug, PartialEq)]
pub struct Kernel {
    radius: usize,
    weights: Vec<f64>,
}

impl Kernel {
    #[inline]
    pub fn radius(&self) -> usize {
        self.radius
    }

    #[inline]
    pub fn side(&self) -> usize {
        2 * self.radius + 1
    }

    /// Weight at row/column offset `(a, b)`, each in `-radius..=radius`.
    pub fn weight(&self, a: isize, b: isize) -> f64 {
        let r = self.radius as isize;
        assert!(a.abs() <= r && b.abs() <= r, "offset ({a}, {b}) outside radius {r}");
        self.weights[((a + r) as usize) * self.side() + (b + r) as usize]
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Builds a kernel from an explicit weight grid. Used when the feeding
    /// kernel differs from the linking kernel.
    pub fn from_weights(radius: usize, weights: Vec<f64>) -> Result<Self> {
        if radius == 0 {
            return invalid("kernel radius must be at least 1");
        }
        let side = 2 * radius + 1;
        if weights.len() != side * side {
            return invalid(format!("expected {} weights, got {}", side * side, weights.len()));
        }
        if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return invalid("kernel weights must be finite and nonnegative");
        }
        Ok(Kernel { radius, weights })
    }

    /// Nonzero taps in a fixed row-major order. Every pixel accumulates its
    /// neighbors in this order, so equal inputs give bit-equal sums.
    pub(crate) fn taps(&self) -> Vec<Tap> {
        let r = self.radius as isize;
        let mut taps = Vec::new();
        for a in -r..=r {
            for b in -r..=r {
                let w = self.weight(a, b);
                if w != 0.0 {
                    taps.push(Tap { di: a, dj: b, weight: w });
                }
            }
        }
        taps
    }
}

/// Builds the inverse Euclidean distance kernel. Radius 1 is the classic
/// 8-neighborhood with weights 1 (edge neighbors) and `1/sqrt(2)` (corners).
pub fn make_kernel(radius: usize) -> Result<Kernel> {
    if radius == 0 {
        return invalid("kernel radius must be at least 1");
    }
    let r = radius as isize;
    let side = 2 * radius + 1;
    let mut weights = Vec::with_capacity(side * side);
    for a in -r..=r {
        for b in -r..=r {
            weights.push(if a == 0 && b == 0 {
                0.0
            } else {
                1.0 / ((a * a + b * b) as f64).sqrt()
            });
        }
    }
    Ok(Kernel { radius, weights })
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct Tap {
    pub di: isize,
    pub dj: isize,
    pub weight: f64,
}

/// Mirror an out-of-range coordinate back into `0..n` without repeating the
/// edge sample (`-1 -> 1`, `n -> n - 2`). Axes of length 1 have no mirror
/// partner, so out-of-range offsets along them contribute nothing.
#[inline]
pub(crate) fn mirror(x: isize, n: usize) -> Option<usize> {
    let n = n as isize;
    if (0..n).contains(&x) {
        return Some(x as usize);
    }
    if n == 1 {
        return None;
    }
    let period = 2 * (n - 1);
    let m = x.rem_euclid(period);
    Some(if m < n { m } else { period - m } as usize)
}

/// Kernel-weighted sum of fired neighbors at `(i, j)`.
#[inline]
pub(crate) fn weighted_sum(y: &Mask, taps: &[Tap], i: usize, j: usize) -> f64 {
    let (w, h) = y.shape();
    let data = y.data();
    let mut acc = 0.0;
    for t in taps {
        let (Some(r), Some(c)) = (mirror(i as isize + t.di, h), mirror(j as isize + t.dj, w)) else {
            continue;
        };
        if data[r * w + c] == 1 {
            acc += t.weight;
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn radius_one_weights() {
        let k = make_kernel(1).unwrap();
        assert_eq!(k.weight(0, 1), 1.0);
        assert!((k.weight(1, 1) - 0.5f64.sqrt()).abs() < 1e-15);
        assert_eq!(k.weight(0, 0), 0.0);
    }

    #[test]
    fn radius_two_weights() {
        let k = make_kernel(2).unwrap();
        assert_eq!(k.weight(2, 0), 0.5);
        assert_eq!(k.weight(-2, 0), 0.5);
        assert_eq!(k.taps().len(), 24);
    }

    #[test]
    fn zero_radius_rejected() {
        assert!(make_kernel(0).is_err());
        assert!(Kernel::from_weights(0, vec![0.0]).is_err());
        assert!(Kernel::from_weights(1, vec![1.0; 8]).is_err());
    }

    #[test]
    fn square_symmetries() {
        for radius in 1..=4 {
            let k = make_kernel(radius).unwrap();
            let r = radius as isize;
            for a in -r..=r {
                for b in -r..=r {
                    let w = k.weight(a, b);
                    for (x, y) in [(b, -a), (-a, -b), (-b, a), (a, -b), (-a, b), (b, a), (-b, -a)] {
                        assert_eq!(w, k.weight(x, y));
                    }
                }
            }
        }
    }

    #[test]
    fn mirror_reflects_without_edge_repeat() {
        assert_eq!(mirror(-1, 5), Some(1));
        assert_eq!(mirror(5, 5), Some(3));
        assert_eq!(mirror(-2, 2), Some(0));
        assert_eq!(mirror(-1, 1), None);
        assert_eq!(mirror(0, 1), Some(0));
        for x in -20..20 {
            assert!(mirror(x, 4).unwrap() < 4);
        }
    }
}
