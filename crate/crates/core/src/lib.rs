//! Quantum embeddings of classical data with generalization bounds, risk bounds and
//! quantum information bottleneck solvers.

pub mod bounds;
pub mod embedding;
pub mod error;
pub mod experiments;
pub mod grid;
pub mod ib;
pub mod optim;
pub mod quantum;
pub mod rng;

pub use error::{Error, Result};
