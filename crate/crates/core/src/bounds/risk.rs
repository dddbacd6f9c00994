//! Classification risks, Bayes and approximation errors, and risk bounds.

use serde::{Deserialize, Serialize};

use super::generalization::{class_entropies, generalization_bound, rademacher_budget};
use crate::embedding::{EmbeddedEnsemble, LabeledEnsemble};
use crate::error::{validation, Error, Result};
use crate::quantum::linalg::{self, CMatrix};
use crate::quantum::{fidelity, helstrom_risk_weighted, sqrt_overlap, von_neumann_entropy, DensityOperator, Povm};

fn require_binary(ens: &LabeledEnsemble) -> Result<()> {
    if ens.num_classes() != 2 {
        return Err(validation(format!(
            "binary quantity requested for {} classes",
            ens.num_classes()
        )));
    }
    Ok(())
}

/// `1 − Σ_c P(c) Tr[Π_c ρ_c]`.
pub fn risk(table: &EmbeddedEnsemble, povm: &Povm) -> Result<f64> {
    let ens = table.ensemble();
    if povm.len() != ens.num_classes() {
        return Err(Error::DimensionMismatch {
            expected: ens.num_classes(),
            found: povm.len(),
        });
    }
    let mut success = 0.0;
    for c in 0..ens.num_classes() {
        success += ens.p_c(c) * povm.probability(c, &table.class_average(c)?)?;
    }
    Ok((1.0 - success).clamp(0.0, 1.0))
}

/// Risk of the Helstrom measurement, `½(1 − ‖p0ρ0 − p1ρ1‖₁)`.
pub fn optimal_risk(table: &EmbeddedEnsemble) -> Result<f64> {
    let ens = table.ensemble();
    require_binary(ens)?;
    helstrom_risk_weighted(
        &table.class_average(0)?,
        &table.class_average(1)?,
        ens.p_c(0),
        ens.p_c(1),
    )
}

/// `1 − Σ_x max_c P(c, x)`.
pub fn bayes_risk(ens: &LabeledEnsemble) -> f64 {
    let success: f64 = (0..ens.len())
        .map(|i| {
            (0..ens.num_classes())
                .map(|c| ens.joint(i, c))
                .fold(0.0, f64::max)
        })
        .sum();
    (1.0 - success).max(0.0)
}

/// `Δ = Σ_x |P(0, x) − P(1, x)|`, which is `½Σ_x |P(x|0) − P(x|1)|` for equal priors.
pub fn bayes_delta(ens: &LabeledEnsemble) -> Result<f64> {
    require_binary(ens)?;
    Ok((0..ens.len())
        .map(|i| (ens.joint(i, 0) - ens.joint(i, 1)).abs())
        .sum())
}

/// `𝒜 = Δ − ‖p0ρ0 − p1ρ1‖₁`, i.e. `Δ − ½‖ρ0 − ρ1‖₁` for equal priors.
///
/// This equals `2(R(Π*) − R^Bayes)`.
pub fn approximation_error(table: &EmbeddedEnsemble) -> Result<f64> {
    let ens = table.ensemble();
    let delta = bayes_delta(ens)?;
    let diff = table.class_average(0)?.matrix().scale(ens.p_c(0))
        - table.class_average(1)?.matrix().scale(ens.p_c(1));
    Ok(delta - linalg::trace_norm(&diff)?)
}

/// `I(C:Q) = S(Σ_c P(c)ρ_c) − Σ_c P(c) S(ρ_c)` in bits.
pub fn class_information(table: &EmbeddedEnsemble) -> Result<f64> {
    let ens = table.ensemble();
    let per_class = class_entropies(table)?;
    let conditional: f64 = per_class
        .iter()
        .enumerate()
        .map(|(c, (s, _))| ens.p_c(c) * s)
        .sum();
    Ok((von_neumann_entropy(&table.average()) - conditional).max(0.0))
}

/// Upper bounds on the optimal risk: `(√(p0p1) Tr[√ρ0 √ρ1], 1 − 2^{I(C:Q)}/N_C)`.
pub fn risk_info_bounds(table: &EmbeddedEnsemble) -> Result<(f64, f64)> {
    let ens = table.ensemble();
    require_binary(ens)?;
    let chernoff = (ens.p_c(0) * ens.p_c(1)).sqrt()
        * sqrt_overlap(&table.class_average(0)?, &table.class_average(1)?)?;
    let entropic = 1.0 - 2f64.powf(class_information(table)?) / ens.num_classes() as f64;
    Ok((chernoff, entropic))
}

/// Matrix of pairwise fidelities `F(ρ(x), ρ(y))`.
pub fn fidelity_matrix(table: &EmbeddedEnsemble) -> Result<Vec<Vec<f64>>> {
    let n = table.ensemble().len();
    let mut f = vec![vec![1.0; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let v = table.fidelity(i, j)?;
            f[i][j] = v;
            f[j][i] = v;
        }
    }
    Ok(f)
}

/// `Σ_{x≠y} Σ_{c≠b(y)} P(c) √(P(x|c)P(y|c)) F(ρ(x),ρ(y))^N`, `b(y) = argmax_c P(c|y)`.
pub fn pgm_approx_bound(table: &EmbeddedEnsemble, copies: u32) -> Result<f64> {
    Ok(pgm_approx_bound_from_fidelities(
        table.ensemble(),
        &fidelity_matrix(table)?,
        copies,
    ))
}

/// As [`pgm_approx_bound`] with precomputed single-copy fidelities.
pub fn pgm_approx_bound_from_fidelities(ens: &LabeledEnsemble, f: &[Vec<f64>], copies: u32) -> f64 {
    let n = ens.len();
    let mut total = 0.0;
    for y in 0..n {
        let b = ens.map_class(y);
        for x in 0..n {
            if x == y {
                continue;
            }
            let fn_ = f[x][y].powi(copies as i32);
            if fn_ == 0.0 {
                continue;
            }
            for c in (0..ens.num_classes()).filter(|&c| c != b) {
                let w = (ens.p_x_given_c(x, c) * ens.p_x_given_c(y, c)).sqrt();
                total += ens.p_c(c) * w * fn_;
            }
        }
    }
    total
}

/// `Σ_{c≠c'} (√(T_c T_{c'})/T) F(ρ_c, ρ_{c'})` over empirical class states.
pub fn multiclass_pgm_training_bound(class_states: &[(usize, DensityOperator)]) -> Result<f64> {
    if class_states.len() < 2 {
        return Err(validation("need at least two classes"));
    }
    let total: usize = class_states.iter().map(|(t, _)| *t).sum();
    if total == 0 {
        return Err(validation("class counts are all zero"));
    }
    let mut sum = 0.0;
    for (a, (ta, ra)) in class_states.iter().enumerate() {
        for (b, (tb, rb)) in class_states.iter().enumerate() {
            if a != b {
                sum += ((ta * tb) as f64).sqrt() / total as f64 * fidelity(ra, rb)?;
            }
        }
    }
    Ok(sum)
}

/// Summary of risks and bounds for one embedding and ensemble.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RiskReport {
    /// Risk of the Helstrom measurement.
    pub risk: f64,
    pub bayes_risk: f64,
    pub delta: f64,
    pub approx_error: f64,
    #[serde(rename = "gen_bound_B")]
    pub gen_bound_b: f64,
    /// `2√(B/T) + √(2 ln(1/δ)/T)`, natural logarithm.
    pub budget: f64,
    #[serde(rename = "T")]
    pub t: usize,
    pub delta_confidence: f64,
}

/// Builds a [`RiskReport`] for a binary ensemble and training-set size `t`.
pub fn risk_report(table: &EmbeddedEnsemble, t: usize, delta_confidence: f64) -> Result<RiskReport> {
    let ens = table.ensemble();
    require_binary(ens)?;
    let b = generalization_bound(table)?;
    let (_, budget) = rademacher_budget(b, t, 2, delta_confidence)?;
    Ok(RiskReport {
        risk: optimal_risk(table)?,
        bayes_risk: bayes_risk(ens),
        delta: bayes_delta(ens)?,
        approx_error: approximation_error(table)?,
        gen_bound_b: b,
        budget,
        t,
        delta_confidence,
    })
}

/// `Σ_x P(x) |x⟩⟨x| ⊗ ρ(x)` as a block-diagonal matrix.
pub fn classical_quantum_state(table: &EmbeddedEnsemble) -> CMatrix {
    let ens = table.ensemble();
    let n = ens.len();
    let d = table.working_dim();
    let mut m = CMatrix::zeros(n * d, n * d);
    for i in 0..n {
        let block = table.state(i).matrix().scale(ens.p_x(i));
        m.view_mut((i * d, i * d), (d, d)).copy_from(&block);
    }
    m
}
