//! The pulse-coupled lattice: kernels, parameters, state stepping and the
//! derived pulse outputs.

mod feeding;
mod hierarchy;
mod kernel;
mod params;
mod pulse;
mod simulation;
mod step;

pub use feeding::spatial_frequency_feeding;
pub use hierarchy::{hierarchical_output, Hierarchy, LevelImage};
pub use kernel::{make_kernel, Kernel};
pub use params::{ParamName, PcnnParams, Variant};
pub use pulse::{capture_times, first_fire_times, time_signature, FireTimeMap, PulseSequence};
pub use simulation::{run, Simulation};
pub use step::{
    default_kernels, init_state, srg_linking_step, step_full, step_simplified, step_srg, Cell, PcnnState, Rule,
    Update,
};
