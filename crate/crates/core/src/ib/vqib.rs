//! Variational information bottleneck over the single-qubit reuploading embedding.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::embedding::{LabeledSample, ReuploadingWeights};
use crate::error::{numerical, validation, Error, Result};
use crate::optim::{nelder_mead_with_restart, NelderMeadConfig};
use crate::quantum::qubit_entropy_from_purity;

/// Optimizer settings for [`vqib_train`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct VqibConfig {
    pub optimizer: NelderMeadConfig,
    /// Step of the simplex used to restart once from the best point; `None` disables it.
    pub restart_step: Option<f64>,
}

impl Default for VqibConfig {
    fn default() -> Self {
        Self {
            optimizer: NelderMeadConfig::default(),
            restart_step: Some(0.1),
        }
    }
}

/// Result of [`vqib_train`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VqibTraining {
    pub weights: ReuploadingWeights,
    pub loss: f64,
    /// Best loss after each simplex iteration.
    pub trajectory: Vec<f64>,
    pub evaluations: usize,
    pub converged: bool,
    pub seed: u64,
}

fn class_counts(train: &[LabeledSample], num_classes: usize) -> Result<Vec<usize>> {
    let mut counts = vec![0usize; num_classes];
    for s in train {
        if s.class >= num_classes {
            return Err(validation(format!("class {} outside 0..{num_classes}", s.class)));
        }
        counts[s.class] += 1;
    }
    if let Some(c) = counts.iter().position(|&t| t == 0) {
        return Err(validation(format!("class {c} has no training samples")));
    }
    Ok(counts)
}

fn entropy_of(purity: f64) -> Result<f64> {
    qubit_entropy_from_purity(purity).map_err(|_| numerical(format!("purity {purity} outside [1/2, 1]")))
}

/// `(1−β) s(𝒫_tot) + β Σ_c (T_c/T) s(𝒫_c)` with purities from pairwise fidelities.
pub fn vqib_loss(weights: &ReuploadingWeights, train: &[LabeledSample], num_classes: usize, beta: f64) -> Result<f64> {
    if !(beta >= 0.0) || !beta.is_finite() {
        return Err(validation(format!("β = {beta} must be a nonnegative number")));
    }
    weights.validate()?;
    let counts = class_counts(train, num_classes)?;
    let amps: Vec<[Complex64; 2]> = train
        .iter()
        .map(|s| weights.amplitudes(&s.x))
        .collect::<Result<_>>()?;
    let mut total_pairs = 0.0;
    let mut class_pairs = vec![0.0; num_classes];
    for i in 0..train.len() {
        for j in i + 1..train.len() {
            let ov = amps[i][0].conj() * amps[j][0] + amps[i][1].conj() * amps[j][1];
            let f2 = ov.norm_sqr();
            total_pairs += f2;
            if train[i].class == train[j].class {
                class_pairs[train[i].class] += f2;
            }
        }
    }
    let t = train.len() as f64;
    let mut loss = (1.0 - beta) * entropy_of((t + 2.0 * total_pairs) / (t * t))?;
    for (c, &tc) in counts.iter().enumerate() {
        let tc = tc as f64;
        loss += beta * tc / t * entropy_of((tc + 2.0 * class_pairs[c]) / (tc * tc))?;
    }
    Ok(loss)
}

/// Minimizes [`vqib_loss`] with Nelder–Mead from all-zero weights.
///
/// The simplex search is deterministic; `seed` is recorded for provenance.
pub fn vqib_train(
    train: &[LabeledSample],
    num_classes: usize,
    beta: f64,
    layers: usize,
    cfg: &VqibConfig,
    seed: u64,
) -> Result<VqibTraining> {
    if layers == 0 {
        return Err(validation("need at least one layer"));
    }
    let first = train.first().ok_or_else(|| validation("training set is empty"))?;
    let input_dim = first.x.len();
    if let Some(s) = train.iter().find(|s| s.x.len() != input_dim) {
        return Err(Error::DimensionMismatch {
            expected: input_dim,
            found: s.x.len(),
        });
    }
    class_counts(train, num_classes)?;
    vqib_loss(&ReuploadingWeights::zeros(layers, input_dim), train, num_classes, beta)?;

    let mut failure: Option<Error> = None;
    let objective = |flat: &[f64]| -> f64 {
        let w = match ReuploadingWeights::from_flat(layers, input_dim, flat) {
            Ok(w) => w,
            Err(e) => {
                failure.get_or_insert(e);
                return f64::INFINITY;
            }
        };
        match vqib_loss(&w, train, num_classes, beta) {
            Ok(v) => v,
            Err(e) => {
                failure.get_or_insert(e);
                f64::INFINITY
            }
        }
    };
    let x0 = vec![0.0; ReuploadingWeights::param_count(layers, input_dim)];
    let m = nelder_mead_with_restart(objective, &x0, &cfg.optimizer, cfg.restart_step)?;
    if !m.value.is_finite() {
        return Err(failure.unwrap_or_else(|| numerical("VQIB loss is not finite")));
    }
    Ok(VqibTraining {
        weights: ReuploadingWeights::from_flat(layers, input_dim, &m.x)?,
        loss: m.value,
        trajectory: m.history,
        evaluations: m.evaluations,
        converged: m.converged,
        seed,
    })
}
