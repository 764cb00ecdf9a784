use super::feeding::spatial_frequency_feeding;
use super::kernel::{make_kernel, Kernel};
use super::params::{PcnnParams, Variant};
use super::pulse::PulseSequence;
use super::step::{init_state, PcnnState, Rule, Update};
use crate::error::{invalid, Result};
use crate::image::GrayImage;

/// A lattice bound to a stimulus, a parameter set and an update rule.
#[derive(Clone, Debug)]
pub struct Simulation {
    params: PcnnParams,
    variant: Variant,
    stimulus: GrayImage,
    feeding_kernel: Kernel,
    linking_kernel: Kernel,
    state: PcnnState,
}

impl Simulation {
    /// For [`Variant::SfFed`] the stimulus is the normalized spatial
    /// frequency of `image` rather than `image` itself.
    pub fn new(image: &GrayImage, params: PcnnParams, variant: Variant) -> Result<Self> {
        params.validate()?;
        let stimulus = match variant {
            Variant::SfFed => spatial_frequency_feeding(image)?,
            _ => image.clone(),
        };
        let kernel = make_kernel(params.radius)?;
        Ok(Simulation {
            params,
            variant,
            state: init_state(&stimulus),
            stimulus,
            feeding_kernel: kernel.clone(),
            linking_kernel: kernel,
        })
    }

    /// Replaces the feeding kernel `M` (full model only; defaults to `W`).
    pub fn with_feeding_kernel(mut self, kernel: Kernel) -> Self {
        self.feeding_kernel = kernel;
        self
    }

    pub fn with_linking_kernel(mut self, kernel: Kernel) -> Self {
        self.linking_kernel = kernel;
        self
    }

    pub fn state(&self) -> &PcnnState {
        &self.state
    }

    pub fn stimulus(&self) -> &GrayImage {
        &self.stimulus
    }

    pub fn params(&self) -> &PcnnParams {
        &self.params
    }

    pub fn step(&mut self) -> Result<&PcnnState> {
        let rule = match self.variant {
            Variant::Full => Rule::Full { feeding: &self.feeding_kernel, linking: &self.linking_kernel },
            Variant::Simplified | Variant::SfFed => Rule::Simplified { linking: &self.linking_kernel },
            Variant::Srg => Rule::RegionGrowing { radius: self.params.radius },
        };
        let next = Update::new(&self.state, &self.stimulus, &self.params, rule)?.apply()?;
        self.state = next;
        Ok(&self.state)
    }

    /// Steps `n` times, collecting the output frames.
    pub fn run(mut self, n: usize) -> Result<PulseSequence> {
        if n == 0 {
            return invalid("iteration count must be at least 1");
        }
        let mut frames = Vec::with_capacity(n);
        for _ in 0..n {
            frames.push(self.step()?.y.clone());
        }
        PulseSequence::new(self.params, self.variant, frames)
    }
}

/// Runs `n` steps from the initial state and returns the pulse frames.
pub fn run(image: &GrayImage, params: &PcnnParams, variant: Variant, n: usize) -> Result<PulseSequence> {
    Simulation::new(image, *params, variant)?.run(n)
}
