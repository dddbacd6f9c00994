//! Fixed-point solvers for the information-bottleneck optimal embedding.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::lagrangian::ib_lagrangian;
use crate::bounds::{generalization_bound, optimal_risk};
use crate::embedding::{EmbeddedEnsemble, LabeledEnsemble};
use crate::error::{numerical, validation, Result};
use crate::quantum::linalg::{self, eigh_unchecked, symmetrize, CMatrix, CVector, LOG_FLOOR};
use crate::quantum::random::{haar_pure_state, random_hermitian};
use crate::quantum::{DensityOperator, MatrixRepr, PureState};
use crate::rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IbMode {
    Pure,
    Mixed,
}

/// Solver settings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct IbConfig {
    pub beta: f64,
    pub iterations: usize,
    pub mode: IbMode,
    pub seed: u64,
    /// Dimension of the embedding space.
    pub dim: usize,
    /// Iterations between trajectory checkpoints. The final iteration is always recorded.
    pub checkpoint_every: usize,
    /// Scale of the Hermitian perturbation around `I/d` that seeds mixed mode.
    pub perturbation: f64,
}

impl Default for IbConfig {
    fn default() -> Self {
        Self {
            beta: 1.0,
            iterations: 1000,
            mode: IbMode::Mixed,
            seed: 0,
            dim: 2,
            checkpoint_every: 100,
            perturbation: 1e-3,
        }
    }
}

impl IbConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.beta >= 0.0) || !self.beta.is_finite() {
            return Err(validation(format!("β = {} must be a nonnegative number", self.beta)));
        }
        if self.iterations == 0 {
            return Err(validation("iterations must be at least 1"));
        }
        if self.dim < 2 || self.dim > crate::embedding::MAX_DIM {
            return Err(validation(format!("embedding dimension {} unsupported", self.dim)));
        }
        if self.checkpoint_every == 0 {
            return Err(validation("checkpoint interval must be at least 1"));
        }
        if !(self.perturbation >= 0.0) || self.perturbation * self.dim as f64 >= 0.5 {
            return Err(validation("perturbation must be small and nonnegative"));
        }
        Ok(())
    }
}

/// Diagnostics recorded during iteration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub iteration: usize,
    pub lagrangian: f64,
    /// Helstrom risk of the class averages, binary ensembles only.
    pub risk: Option<f64>,
    pub bound_b: f64,
    /// Largest trace distance `‖ρ_new(x) − ρ_old(x)‖₁` in the last sweep.
    pub residual: f64,
}

/// Embedding table produced by a solver together with its trajectory.
#[derive(Debug, Clone)]
pub struct IbSolution {
    pub beta: f64,
    pub mode: IbMode,
    pub table: EmbeddedEnsemble,
    pub trajectory: Vec<Checkpoint>,
}

/// Serializable form of an [`IbSolution`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IbSolutionRecord {
    pub beta: f64,
    pub mode: IbMode,
    pub inputs: Vec<Vec<f64>>,
    /// Bloch vectors, one per input, for qubit embeddings.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bloch: Option<Vec<[f64; 3]>>,
    /// Full matrices for higher-dimensional embeddings.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub states: Option<Vec<MatrixRepr>>,
    pub trajectory: Vec<Checkpoint>,
}

impl IbSolution {
    pub fn final_checkpoint(&self) -> &Checkpoint {
        self.trajectory.last().expect("trajectory always has a final checkpoint")
    }

    /// Bloch vectors of the tabulated states for qubit embeddings.
    pub fn bloch(&self) -> Option<Vec<[f64; 3]>> {
        self.table.states().iter().map(DensityOperator::bloch_vector).collect()
    }

    pub fn record(&self) -> IbSolutionRecord {
        let bloch = self.bloch();
        let states = if bloch.is_some() {
            None
        } else {
            Some(self.table.states().iter().map(|s| MatrixRepr::from_matrix(s.matrix())).collect())
        };
        IbSolutionRecord {
            beta: self.beta,
            mode: self.mode,
            inputs: self.table.ensemble().inputs().to_vec(),
            bloch,
            states,
            trajectory: self.trajectory.clone(),
        }
    }
}

/// Floored logarithms of `ρ̄` and every `ρ_c` for the current table.
fn class_logs(ens: &LabeledEnsemble, states: &[CMatrix]) -> (CMatrix, Vec<CMatrix>) {
    let d = states[0].nrows();
    let mut classes = Vec::with_capacity(ens.num_classes());
    let mut mean = CMatrix::zeros(d, d);
    for c in 0..ens.num_classes() {
        let mut rho = CMatrix::zeros(d, d);
        for (i, s) in states.iter().enumerate() {
            let w = ens.p_x_given_c(i, c);
            if w != 0.0 {
                rho += s.scale(w);
            }
        }
        mean += rho.scale(ens.p_c(c));
        classes.push(log_floored(rho));
    }
    (log_floored(mean), classes)
}

fn log_floored(m: CMatrix) -> CMatrix {
    eigh_unchecked(symmetrize(&m)).map(|x| x.max(LOG_FLOOR).ln())
}

/// `(1−β) log ρ̄ + β Σ_c P(c|x) log ρ_c`.
fn generator(ens: &LabeledEnsemble, i: usize, beta: f64, log_mean: &CMatrix, log_classes: &[CMatrix]) -> CMatrix {
    let mut g = log_mean.scale(1.0 - beta);
    for (c, l) in log_classes.iter().enumerate() {
        let w = beta * ens.p_c_given_x(c, i);
        if w != 0.0 {
            g += l.scale(w);
        }
    }
    symmetrize(&g)
}

/// `exp(G − λ_max)`, whose largest eigenvalue is 1.
fn shifted_exp(g: CMatrix) -> Result<CMatrix> {
    let eig = eigh_unchecked(g);
    let top = *eig.values.last().expect("nonempty spectrum");
    if !top.is_finite() {
        return Err(numerical("IB generator is not finite"));
    }
    Ok(eig.map(|x| (x - top).exp()))
}

fn normalize_density(m: CMatrix) -> Result<CMatrix> {
    let tr = linalg::trace(&m).re;
    if !(tr > 1e-300) || !tr.is_finite() {
        return Err(numerical(format!("IB update has trace {tr:e}")));
    }
    Ok(symmetrize(&m.unscale(tr)))
}

/// One Jacobi sweep `ρ(x) ← exp[(1−β) log ρ̄ + β Σ_c P(c|x) log ρ_c] / Tr[·]`.
pub fn ib_step_mixed(ens: &LabeledEnsemble, states: &[DensityOperator], beta: f64) -> Result<Vec<DensityOperator>> {
    if states.len() != ens.len() || states.is_empty() {
        return Err(validation("need one state per input"));
    }
    let mats: Vec<CMatrix> = states.iter().map(|s| s.matrix().clone()).collect();
    let next = mixed_sweep(ens, &mats, beta)?;
    Ok(next.into_iter().map(DensityOperator::from_trusted).collect())
}

fn mixed_sweep(ens: &LabeledEnsemble, states: &[CMatrix], beta: f64) -> Result<Vec<CMatrix>> {
    let (log_mean, log_classes) = class_logs(ens, states);
    (0..states.len())
        .map(|i| normalize_density(shifted_exp(generator(ens, i, beta, &log_mean, &log_classes))?))
        .collect()
}

fn pure_sweep<R: Rng>(
    ens: &LabeledEnsemble,
    vectors: &[CVector],
    beta: f64,
    rng: &mut R,
) -> Result<Vec<CVector>> {
    let states: Vec<CMatrix> = vectors.iter().map(|v| v * v.adjoint()).collect();
    let (log_mean, log_classes) = class_logs(ens, &states);
    let d = vectors[0].len();
    let mut out = Vec::with_capacity(vectors.len());
    for (i, v) in vectors.iter().enumerate() {
        let e = shifted_exp(generator(ens, i, beta, &log_mean, &log_classes))?;
        let w = e * v;
        let norm = w.norm();
        if norm > 1e-150 && norm.is_finite() {
            out.push(w.unscale(norm));
        } else {
            out.push(haar_pure_state(d, rng)?.amplitudes().clone());
        }
    }
    Ok(out)
}

fn trace_distance(a: &CMatrix, b: &CMatrix) -> f64 {
    linalg::eigvalsh_unchecked(symmetrize(&(a - b)))
        .iter()
        .map(|v| v.abs())
        .sum()
}

fn checkpoint(iteration: usize, beta: f64, table: &EmbeddedEnsemble, residual: f64) -> Result<Checkpoint> {
    let risk = if table.ensemble().num_classes() == 2 {
        Some(optimal_risk(table)?)
    } else {
        None
    };
    Ok(Checkpoint {
        iteration,
        lagrangian: ib_lagrangian(table, beta)?,
        risk,
        bound_b: generalization_bound(table)?,
        residual,
    })
}

fn is_checkpoint(it: usize, cfg: &IbConfig) -> bool {
    it % cfg.checkpoint_every == 0 || it == cfg.iterations
}

/// Mixed-state solver seeded at `I/d` plus a small input-dependent Hermitian perturbation.
pub fn ib_iterate_mixed(ens: &LabeledEnsemble, cfg: &IbConfig) -> Result<IbSolution> {
    cfg.validate()?;
    if cfg.mode != IbMode::Mixed {
        return Err(validation("configuration is not in mixed mode"));
    }
    let d = cfg.dim;
    let mut rng = rng::stream(cfg.seed, &[0]);
    let mut states: Vec<CMatrix> = (0..ens.len())
        .map(|_| {
            let mut h = random_hermitian(d, 1.0, &mut rng);
            let shift = linalg::trace(&h).re / d as f64;
            h -= linalg::identity(d).scale(shift);
            let scale = linalg::eigvalsh_unchecked(h.clone())
                .iter()
                .fold(0.0f64, |m, v| m.max(v.abs()))
                .max(1e-300);
            linalg::identity(d).unscale(d as f64) + h.scale(cfg.perturbation / scale)
        })
        .collect();
    let mut trajectory = Vec::new();
    for it in 1..=cfg.iterations {
        let next = mixed_sweep(ens, &states, cfg.beta)?;
        if is_checkpoint(it, cfg) {
            let residual = next
                .iter()
                .zip(&states)
                .map(|(a, b)| trace_distance(a, b))
                .fold(0.0, f64::max);
            let table = mixed_table(ens, &next)?;
            trajectory.push(checkpoint(it, cfg.beta, &table, residual)?);
        }
        states = next;
    }
    Ok(IbSolution {
        beta: cfg.beta,
        mode: IbMode::Mixed,
        table: mixed_table(ens, &states)?,
        trajectory,
    })
}

fn mixed_table(ens: &LabeledEnsemble, states: &[CMatrix]) -> Result<EmbeddedEnsemble> {
    let ops = states
        .iter()
        .map(|m| DensityOperator::new(m.clone()))
        .collect::<Result<Vec<_>>>()?;
    EmbeddedEnsemble::from_states(ens, ops)
}

fn pure_table(ens: &LabeledEnsemble, vectors: &[CVector]) -> Result<EmbeddedEnsemble> {
    let states = vectors
        .iter()
        .map(|v| PureState::new(v.clone()))
        .collect::<Result<Vec<_>>>()?;
    EmbeddedEnsemble::from_pure_states(ens, states)
}

/// Pure-state solver: power iteration `|ψ(x)⟩ ← exp[G(x)]|ψ(x)⟩` from Haar-random states.
pub fn ib_iterate_pure(ens: &LabeledEnsemble, cfg: &IbConfig) -> Result<IbSolution> {
    cfg.validate()?;
    if cfg.mode != IbMode::Pure {
        return Err(validation("configuration is not in pure mode"));
    }
    let mut rng = rng::stream(cfg.seed, &[1]);
    let mut vectors: Vec<CVector> = (0..ens.len())
        .map(|_| Ok(haar_pure_state(cfg.dim, &mut rng)?.amplitudes().clone()))
        .collect::<Result<_>>()?;
    let mut trajectory = Vec::new();
    for it in 1..=cfg.iterations {
        let next = pure_sweep(ens, &vectors, cfg.beta, &mut rng)?;
        if is_checkpoint(it, cfg) {
            let residual = next
                .iter()
                .zip(&vectors)
                .map(|(a, b)| trace_distance(&(a * a.adjoint()), &(b * b.adjoint())))
                .fold(0.0, f64::max);
            let table = pure_table(ens, &next)?;
            trajectory.push(checkpoint(it, cfg.beta, &table, residual)?);
        }
        vectors = next;
    }
    Ok(IbSolution {
        beta: cfg.beta,
        mode: IbMode::Pure,
        table: pure_table(ens, &vectors)?,
        trajectory,
    })
}

/// Dispatches on `cfg.mode`.
pub fn ib_iterate(ens: &LabeledEnsemble, cfg: &IbConfig) -> Result<IbSolution> {
    match cfg.mode {
        IbMode::Mixed => ib_iterate_mixed(ens, cfg),
        IbMode::Pure => ib_iterate_pure(ens, cfg),
    }
}

/// Solves for every `β` in `betas`, in parallel on the current rayon pool.
pub fn ib_sweep(ens: &LabeledEnsemble, betas: &[f64], cfg: &IbConfig) -> Result<Vec<IbSolution>> {
    betas
        .par_iter()
        .map(|&beta| {
            let c = IbConfig {
                beta,
                ..cfg.clone()
            };
            ib_iterate(ens, &c)
        })
        .collect()
}
