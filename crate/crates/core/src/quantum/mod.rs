//! Finite-dimensional quantum states, measurements and matrix functions.

pub mod linalg;
pub mod measure;
pub mod random;
pub mod state;

pub use linalg::{
    eigh, eigvalsh, expm_hermitian, kron, logm_floored, matrix_function, partial_trace, psd_power,
    schatten_one_norm, spectral_floor, sqrtm_psd, trace_norm, CMatrix, CVector, Eigh, Subsystem,
};
pub use measure::{
    helstrom_povm, helstrom_risk, helstrom_risk_weighted, swap_test_estimate, BinaryPovm, Povm,
};
pub use state::{
    fidelity, qubit_entropy_from_purity, spectrum_entropy, sqrt_overlap, von_neumann_entropy,
    DensityOperator, MatrixRepr, PureState,
};
