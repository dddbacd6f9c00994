use rand::seq::IndexedRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{validation, Result};
use crate::quantum::swap_test_estimate;

/// How the classifier obtains fidelities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FidelityMode {
    Exact,
    /// SWAP-test estimates from this many shots.
    Shots(usize),
}

/// Training state with its class and an identifier of the prepared state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrainingState {
    pub class: usize,
    pub id: usize,
}

/// Nearest neighbour in fidelity: returns the class of the training state with the largest
/// exact or estimated fidelity `fidelity(query, id)` to the query.
///
/// Among training states tied at the maximum, one with the same id as the query wins.
/// Otherwise exact mode takes the first and shot mode a uniformly random one.
pub fn fidelity_classifier<R, F>(
    train: &[TrainingState],
    query: usize,
    fidelity: F,
    mode: FidelityMode,
    rng: &mut R,
) -> Result<usize>
where
    R: Rng + ?Sized,
    F: Fn(usize, usize) -> f64,
{
    if train.is_empty() {
        return Err(validation("fidelity classifier needs training states"));
    }
    let scores: Vec<f64> = match mode {
        FidelityMode::Exact => train.iter().map(|t| fidelity(query, t.id)).collect(),
        FidelityMode::Shots(shots) => train
            .iter()
            .map(|t| swap_test_estimate(fidelity(query, t.id).clamp(0.0, 1.0), shots, rng))
            .collect::<Result<_>>()?,
    };
    let best = scores.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let tied: Vec<&TrainingState> = train.iter().zip(&scores).filter(|(_, &s)| s == best).map(|(t, _)| t).collect();
    if let Some(t) = tied.iter().find(|t| t.id == query) {
        return Ok(t.class);
    }
    let pick = match mode {
        FidelityMode::Exact => tied[0],
        FidelityMode::Shots(_) => tied.choose(rng).expect("at least one state attains the maximum"),
    };
    Ok(pick.class)
}
