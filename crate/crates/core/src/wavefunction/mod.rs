//! Fundamental and second solutions, the boundary condition at the origin,
//! normalized bound states and node counting.

mod bound;
mod sampled;
mod solutions;

pub use bound::{bound_state, BoundState, TAIL_FLOOR};
pub use sampled::{count_nodes, count_nodes_refined, SampleMeta, SampledFunction, NODE_FLOOR};
pub(crate) use solutions::decaying_amplitude_ratio;
pub use solutions::{
    boundary_ratio, decaying_psi, fundamental_amplitude_ratio, fundamental_psi, psi, residual_step,
    schrodinger_residual, second_psi, RESIDUAL_STEP_FRACTION,
};
