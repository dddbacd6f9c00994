//! Generalization bounds, risks and their information-theoretic estimates.

mod generalization;
mod kernel;
mod risk;

pub use generalization::{
    conditional_renyi_mi, gen_bound_b, generalization_bound, purity_rank_bound,
    rademacher_budget, renyi_mutual_information, ClassPurityBound, PurityRankBound,
};
pub use kernel::{almost_diagonal_expansion, kernel_bound_b, KernelMatrix, KERNEL_CLIP};
pub use risk::{
    approximation_error, bayes_delta, bayes_risk, class_information, classical_quantum_state,
    fidelity_matrix, multiclass_pgm_training_bound, optimal_risk, pgm_approx_bound,
    pgm_approx_bound_from_fidelities, risk, risk_info_bounds, risk_report, RiskReport,
};
