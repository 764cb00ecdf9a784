use rayon::prelude::*;

use super::kernel::{make_kernel, mirror, weighted_sum, Kernel, Tap};
use super::params::PcnnParams;
use crate::error::{invalid, Error, Result};
use crate::image::{GrayImage, Mask};

/// Per-pixel fields of the lattice after `step` synchronous updates.
#[derive(Clone, Debug, PartialEq)]
pub struct PcnnState {
    width: usize,
    height: usize,
    pub f: Vec<f64>,
    pub l: Vec<f64>,
    pub u: Vec<f64>,
    pub e: Vec<f64>,
    pub y: Mask,
    pub step: usize,
}

impl PcnnState {
    /// Assembles a state from raw fields, checking shapes and finiteness.
    #[allow(clippy::too_many_arguments)]
    pub fn from_fields(
        width: usize,
        height: usize,
        f: Vec<f64>,
        l: Vec<f64>,
        u: Vec<f64>,
        e: Vec<f64>,
        y: Mask,
        step: usize,
    ) -> Result<Self> {
        let n = width * height;
        if y.shape() != (width, height) || [&f, &l, &u, &e].iter().any(|v| v.len() != n) {
            return invalid(format!("state fields do not match {width}x{height}"));
        }
        if [&f, &l, &u, &e].iter().any(|v| v.iter().any(|x| !x.is_finite())) {
            return invalid("state fields must be finite");
        }
        Ok(PcnnState { width, height, f, l, u, e, y, step })
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
    pub fn shape(&self) -> (usize, usize) {
        (self.width, self.height)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.width * self.height
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Initial conditions: feeding starts at the stimulus, every other field at
/// zero. With a zero threshold every neuron fires on the first step.
pub fn init_state(image: &GrayImage) -> PcnnState {
    let n = image.len();
    PcnnState {
        width: image.width(),
        height: image.height(),
        f: image.data().to_vec(),
        l: vec![0.0; n],
        u: vec![0.0; n],
        e: vec![0.0; n],
        y: Mask::zeros(image.width(), image.height()),
        step: 0,
    }
}

/// Feeding/linking rule applied during one step.
#[derive(Clone, Copy, Debug)]
pub enum Rule<'a> {
    /// `F' = e^-aF F + S + V_F (M*Y)`, `L' = e^-aL L + V_L (W*Y)`.
    Full { feeding: &'a Kernel, linking: &'a Kernel },
    /// `F' = S`, `L' = V_L (W*Y)`.
    Simplified { linking: &'a Kernel },
    /// `F' = S`, `L' = 1` if any neighbor within `radius` fired, else 0.
    RegionGrowing { radius: usize },
}

/// New values of one neuron.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Cell {
    pub f: f64,
    pub l: f64,
    pub u: f64,
    pub e: f64,
    pub y: bool,
}

/// Read-only view of everything one step needs. Each cell depends only on the
/// previous state, so cells can be evaluated in any order.
pub struct Update<'a> {
    state: &'a PcnnState,
    stimulus: &'a GrayImage,
    params: &'a PcnnParams,
    rule: Rule<'a>,
    feeding_taps: Vec<Tap>,
    linking_taps: Vec<Tap>,
    srg_radius: isize,
    feeding_decay: f64,
    linking_decay: f64,
    threshold_decay: f64,
}

impl<'a> Update<'a> {
    pub fn new(
        state: &'a PcnnState,
        stimulus: &'a GrayImage,
        params: &'a PcnnParams,
        rule: Rule<'a>,
    ) -> Result<Self> {
        params.validate()?;
        if state.shape() != stimulus.shape() {
            return invalid(format!(
                "state is {}x{} but stimulus is {}x{}",
                state.width,
                state.height,
                stimulus.width(),
                stimulus.height()
            ));
        }
        let (feeding_taps, linking_taps, srg_radius) = match rule {
            Rule::Full { feeding, linking } => (feeding.taps(), linking.taps(), 0),
            Rule::Simplified { linking } => (Vec::new(), linking.taps(), 0),
            Rule::RegionGrowing { radius } => {
                if radius == 0 {
                    return invalid("neighborhood radius must be at least 1");
                }
                (Vec::new(), Vec::new(), radius as isize)
            }
        };
        Ok(Update {
            state,
            stimulus,
            params,
            rule,
            feeding_taps,
            linking_taps,
            srg_radius,
            feeding_decay: params.feeding_decay(),
            linking_decay: params.linking_decay(),
            threshold_decay: params.threshold_decay(),
        })
    }

    /// Evaluates pixel `index` from the previous state.
    pub fn cell(&self, index: usize) -> Cell {
        let st = self.state;
        let p = self.params;
        let i = index / st.width;
        let j = index % st.width;
        let s = self.stimulus.data()[index];
        let (f, l) = match self.rule {
            Rule::Full { .. } => {
                let fed = weighted_sum(&st.y, &self.feeding_taps, i, j);
                let linked = weighted_sum(&st.y, &self.linking_taps, i, j);
                (
                    self.feeding_decay * st.f[index] + s + p.v_f * fed,
                    self.linking_decay * st.l[index] + p.v_l * linked,
                )
            }
            Rule::Simplified { .. } => (s, p.v_l * weighted_sum(&st.y, &self.linking_taps, i, j)),
            Rule::RegionGrowing { .. } => {
                let fired = any_neighbor_fired(&st.y, self.srg_radius, i, j);
                (s, if fired { 1.0 } else { 0.0 })
            }
        };
        let u = f * (1.0 + p.beta * l);
        let y_old = if st.y.data()[index] == 1 { 1.0 } else { 0.0 };
        let e = self.threshold_decay * st.e[index] + p.v_e * y_old;
        Cell { f, l, u, e, y: u > e }
    }

    /// Evaluates every cell in parallel and assembles the next state.
    pub fn apply(&self) -> Result<PcnnState> {
        let cells: Vec<Cell> = (0..self.state.len()).into_par_iter().map(|k| self.cell(k)).collect();
        self.assemble(cells)
    }

    /// Evaluates cells one at a time in the given visiting order. `order` must
    /// be a permutation of the pixel indices.
    pub fn apply_in_order(&self, order: &[usize]) -> Result<PcnnState> {
        let n = self.state.len();
        let mut cells: Vec<Option<Cell>> = vec![None; n];
        for &k in order {
            if k >= n || cells[k].is_some() {
                return invalid("visiting order is not a permutation of the pixels");
            }
            cells[k] = Some(self.cell(k));
        }
        let cells: Option<Vec<Cell>> = cells.into_iter().collect();
        match cells {
            Some(c) => self.assemble(c),
            None => invalid("visiting order is not a permutation of the pixels"),
        }
    }

    fn assemble(&self, cells: Vec<Cell>) -> Result<PcnnState> {
        let (w, h) = self.state.shape();
        let step = self.state.step + 1;
        for (k, c) in cells.iter().enumerate() {
            for (name, v) in [("F", c.f), ("L", c.l), ("U", c.u), ("E", c.e)] {
                if !v.is_finite() {
                    return Err(Error::Numeric {
                        step,
                        detail: format!("{name} = {v} at pixel ({}, {})", k / w, k % w),
                    });
                }
            }
        }
        let mut next = PcnnState {
            width: w,
            height: h,
            f: Vec::with_capacity(cells.len()),
            l: Vec::with_capacity(cells.len()),
            u: Vec::with_capacity(cells.len()),
            e: Vec::with_capacity(cells.len()),
            y: Mask::from_bools(w, h, cells.iter().map(|c| c.y)),
            step,
        };
        for c in &cells {
            next.f.push(c.f);
            next.l.push(c.l);
            next.u.push(c.u);
            next.e.push(c.e);
        }
        Ok(next)
    }
}

fn any_neighbor_fired(y: &Mask, r: isize, i: usize, j: usize) -> bool {
    let (w, h) = y.shape();
    for a in -r..=r {
        for b in -r..=r {
            if a == 0 && b == 0 {
                continue;
            }
            if let (Some(ri), Some(cj)) = (mirror(i as isize + a, h), mirror(j as isize + b, w)) {
                if y.data()[ri * w + cj] == 1 {
                    return true;
                }
            }
        }
    }
    false
}

/// One step of the full model.
pub fn step_full(
    state: &PcnnState,
    image: &GrayImage,
    params: &PcnnParams,
    m_kernel: &Kernel,
    w_kernel: &Kernel,
) -> Result<PcnnState> {
    Update::new(state, image, params, Rule::Full { feeding: m_kernel, linking: w_kernel })?.apply()
}

/// One step of the simplified model.
pub fn step_simplified(
    state: &PcnnState,
    image: &GrayImage,
    params: &PcnnParams,
    w_kernel: &Kernel,
) -> Result<PcnnState> {
    Update::new(state, image, params, Rule::Simplified { linking: w_kernel })?.apply()
}

/// One step of the region-growing variant; the neighborhood is `params.radius`.
pub fn step_srg(state: &PcnnState, image: &GrayImage, params: &PcnnParams) -> Result<PcnnState> {
    Update::new(state, image, params, Rule::RegionGrowing { radius: params.radius })?.apply()
}

/// Binary linking of the region-growing variant: 1 where any neighbor within
/// `radius` fired in `y_prev`. The pixel itself is excluded.
pub fn srg_linking_step(y_prev: &Mask, radius: usize) -> Result<Mask> {
    if radius == 0 {
        return invalid("neighborhood radius must be at least 1");
    }
    let (w, h) = y_prev.shape();
    let r = radius as isize;
    Ok(Mask::from_fn(w, h, |i, j| any_neighbor_fired(y_prev, r, i, j)))
}

/// Default kernel pair for a parameter set (the feeding kernel equals the
/// linking kernel).
pub fn default_kernels(params: &PcnnParams) -> Result<(Kernel, Kernel)> {
    let k = make_kernel(params.radius)?;
    Ok((k.clone(), k))
}
