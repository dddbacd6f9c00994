//! Information-bottleneck objectives and solvers.

mod fixed_point;
mod lagrangian;
mod vqib;

pub use fixed_point::{
    ib_iterate, ib_iterate_mixed, ib_iterate_pure, ib_step_mixed, ib_sweep, Checkpoint, IbConfig, IbMode, IbSolution,
    IbSolutionRecord,
};
pub use lagrangian::{ib_information_objective, ib_lagrangian};
pub use vqib::{vqib_loss, vqib_train, VqibConfig, VqibTraining};
