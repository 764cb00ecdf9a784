//! Lattice-shaped containers: real-valued planes, normalized gray images and
//! binary masks. All fields are row-major, index `(i, j) = i * width + j`.

use std::ops::Deref;

use crate::error::{invalid, Result};

/// Lower bound of normalized intensities. A pixel at zero would never fire
/// under the simplified model, so every stimulus is clamped to `[EPSILON, 1]`.
pub const EPSILON: f64 = 1e-3;

/// A rectangular grid of finite reals with no range restriction.
#[derive(Clone, Debug, PartialEq)]
pub struct Plane {
    width: usize,
    height: usize,
    data: Vec<f64>,
}

impl Plane {
    pub fn new(width: usize, height: usize, data: Vec<f64>) -> Result<Self> {
        check_shape(width, height, data.len())?;
        if let Some(p) = data.iter().position(|v| !v.is_finite()) {
            return invalid(format!("non-finite value at index {p}"));
        }
        Ok(Plane { width, height, data })
    }

    pub fn filled(width: usize, height: usize, value: f64) -> Result<Self> {
        Plane::new(width, height, vec![value; width * height])
    }

    pub fn from_fn(
        width: usize,
        height: usize,
        mut f: impl FnMut(usize, usize) -> f64,
    ) -> Result<Self> {
        let mut data = Vec::with_capacity(width * height);
        for i in 0..height {
            for j in 0..width {
                data.push(f(i, j));
            }
        }
        Plane::new(width, height, data)
    }

    #[inline]
    pub fn width(&self) -> usize {
        self.width
    }

    #[inline]
    pub fn height(&self) -> usize {
        self.height
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.data.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    #[inline]
    pub fn shape(&self) -> (usize, usize) {
        (self.width, self.height)
    }

    #[inline]
    pub fn data(&self) -> &[f64] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.width + j]
    }

    pub fn into_data(self) -> Vec<f64> {
        self.data
    }

    pub fn mean(&self) -> f64 {
        self.data.iter().sum::<f64>() / self.data.len() as f64
    }
}

/// Normalized intensity image used as the network stimulus. Every value lies
/// in `[EPSILON, 1]`.
#[derive(Clone, Debug, PartialEq)]
pub struct GrayImage(Plane);

impl GrayImage {
    /// Builds an image from values that must already lie in `[EPSILON, 1]`.
    pub fn new(width: usize, height: usize, data: Vec<f64>) -> Result<Self> {
        let plane = Plane::new(width, height, data)?;
        if let Some(p) = plane
            .data
            .iter()
            .position(|v| !(EPSILON..=1.0).contains(v))
        {
            return invalid(format!(
                "intensity {} at index {p} outside [{EPSILON}, 1]",
                plane.data[p]
            ));
        }
        Ok(GrayImage(plane))
    }

    /// Builds an image from arbitrary finite values, clamping into `[EPSILON, 1]`.
    pub fn clamped(width: usize, height: usize, data: Vec<f64>) -> Result<Self> {
        let mut plane = Plane::new(width, height, data)?;
        for v in &mut plane.data {
            *v = v.clamp(EPSILON, 1.0);
        }
        Ok(GrayImage(plane))
    }

    /// Maps 8-bit samples through `v / maxval`, then clamps.
    pub fn from_u8(width: usize, height: usize, bytes: &[u8], maxval: u8) -> Result<Self> {
        if maxval == 0 {
            return invalid("maxval must be at least 1");
        }
        let m = f64::from(maxval);
        GrayImage::clamped(width, height, bytes.iter().map(|&b| f64::from(b) / m).collect())
    }

    pub fn uniform(width: usize, height: usize, value: f64) -> Result<Self> {
        GrayImage::new(width, height, vec![value; width * height])
    }

    pub fn from_fn(
        width: usize,
        height: usize,
        f: impl FnMut(usize, usize) -> f64,
    ) -> Result<Self> {
        let plane = Plane::from_fn(width, height, f)?;
        GrayImage::new(width, height, plane.data)
    }

    pub fn plane(&self) -> &Plane {
        &self.0
    }

    pub fn into_plane(self) -> Plane {
        self.0
    }
}

impl Deref for GrayImage {
    type Target = Plane;

    fn deref(&self) -> &Plane {
        &self.0
    }
}

impl AsRef<Plane> for GrayImage {
    fn as_ref(&self) -> &Plane {
        &self.0
    }
}

/// Binary field with values in `{0, 1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mask {
    width: usize,
    height: usize,
    data: Vec<u8>,
}

impl Mask {
    pub fn new(width: usize, height: usize, data: Vec<u8>) -> Result<Self> {
        check_shape(width, height, data.len())?;
        if let Some(p) = data.iter().position(|&v| v > 1) {
            return invalid(format!("mask value {} at index {p} is not binary", data[p]));
        }
        Ok(Mask { width, height, data })
    }

    pub fn zeros(width: usize, height: usize) -> Self {
        Mask { width, height, data: vec![0; width * height] }
    }

    pub fn ones(width: usize, height: usize) -> Self {
        Mask { width, height, data: vec![1; width * height] }
    }

    pub fn from_fn(width: usize, height: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut data = Vec::with_capacity(width * height);
        for i in 0..height {
            for j in 0..width {
                data.push(u8::from(f(i, j)));
            }
        }
        Mask { width, height, data }
    }

    pub(crate) fn from_bools(width: usize, height: usize, bits: impl IntoIterator<Item = bool>) -> Self {
        let data: Vec<u8> = bits.into_iter().map(u8::from).collect();
        debug_assert_eq!(data.len(), width * height);
        Mask { width, height, data }
    }

    #[inline]
    pub fn width(&self) -> usize {
        self.width
    }

    #[inline]
    pub fn height(&self) -> usize {
        self.height
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.data.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    #[inline]
    pub fn shape(&self) -> (usize, usize) {
        (self.width, self.height)
    }

    #[inline]
    pub fn data(&self) -> &[u8] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.data[i * self.width + j] == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        self.data[i * self.width + j] = u8::from(value);
    }

    pub fn count_ones(&self) -> usize {
        self.data.iter().filter(|&&v| v == 1).count()
    }

    pub fn complement(&self) -> Mask {
        Mask {
            width: self.width,
            height: self.height,
            data: self.data.iter().map(|&v| 1 - v).collect(),
        }
    }

    /// Pixelwise OR, in place.
    pub fn union_with(&mut self, other: &Mask) {
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a |= *b;
        }
    }

    pub fn is_uniform(&self) -> bool {
        self.data.windows(2).all(|w| w[0] == w[1])
    }
}

fn check_shape(width: usize, height: usize, len: usize) -> Result<()> {
    if width == 0 || height == 0 {
        return invalid(format!("empty lattice {width}x{height}"));
    }
    if width.checked_mul(height) != Some(len) {
        return invalid(format!(
            "data length {len} does not match {width}x{height}"
        ));
    }
    Ok(())
}
