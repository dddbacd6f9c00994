//! Datasets, Ising ground-state overlaps, the fidelity classifier and end-to-end drivers.

mod classifier;
mod datasets;
mod drivers;
mod ising;
mod result;

pub use classifier::{fidelity_classifier, FidelityMode, TrainingState};
pub use datasets::{gaussian_ensemble, two_moons, AffineMap, GaussianEnsemble, WINDOW_MASS_TOLERANCE};
pub use drivers::{
    ising_phase, run_bounds, run_fig4, run_ib_sweep, run_ising, run_moons_vqib, BoundsConfig, Fig4Config,
    GaussianConfig, IbSweepConfig, IsingConfig, MoonsConfig, RunOptions, FAR_FROM_CRITICAL,
};
pub use ising::{
    ising_angles, ising_kernel, ising_overlap, ising_overlap_matrix, ising_sector_overlap, overlap_from_angles,
    IsingSpec,
};
pub use result::{pretty, Cell, Document, ExperimentResult, OutputFormat, Table};
