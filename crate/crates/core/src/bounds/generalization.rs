//! Generalization bound `B`, Rényi mutual informations and sample-complexity budgets.

use serde::{Deserialize, Serialize};

use crate::embedding::{EmbeddedEnsemble, Embedding, LabeledEnsemble};
use crate::error::{validation, Result};
use crate::quantum::linalg::{self, CMatrix};
use crate::quantum::{von_neumann_entropy, DensityOperator};

/// `Σ_x w(x) ρ(x)²`.
fn weighted_second_moment(table: &EmbeddedEnsemble, weights: &[f64]) -> CMatrix {
    if table.pure_states().is_some() {
        return table.weighted_sum(weights);
    }
    let d = table.working_dim();
    let mut acc = CMatrix::zeros(d, d);
    for (w, s) in weights.iter().zip(table.states()) {
        if *w != 0.0 {
            acc += (s.matrix() * s.matrix()).scale(*w);
        }
    }
    linalg::symmetrize(&acc)
}

/// `Tr√M` for a positive semidefinite matrix.
fn trace_sqrt(m: &CMatrix) -> Result<f64> {
    Ok(linalg::psd_power(&linalg::eigvalsh(m)?, 0.5).iter().sum())
}

/// `Tr[M^p]` for a positive semidefinite matrix.
fn trace_power(m: &CMatrix, p: f64) -> Result<f64> {
    Ok(linalg::psd_power(&linalg::eigvalsh(m)?, p).iter().sum())
}

/// `Σ_x w(x) ρ(x)^α`.
fn weighted_power(table: &EmbeddedEnsemble, weights: &[f64], alpha: f64) -> CMatrix {
    if table.pure_states().is_some() {
        return table.weighted_sum(weights);
    }
    let d = table.working_dim();
    let mut acc = CMatrix::zeros(d, d);
    for (w, s) in weights.iter().zip(table.states()) {
        if *w != 0.0 {
            let p = s.eigh().psd_power(alpha);
            acc += p.scale(*w);
        }
    }
    linalg::symmetrize(&acc)
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(validation(format!("Rényi order {alpha} must be positive and finite")));
    }
    Ok(())
}

/// `B = (Tr√(Σ_x P(x) ρ(x)²))²`.
pub fn generalization_bound(table: &EmbeddedEnsemble) -> Result<f64> {
    let m = weighted_second_moment(table, &table.ensemble().input_marginal());
    Ok(trace_sqrt(&m)?.powi(2))
}

/// `B` for embedding `e` on `ens`.
pub fn gen_bound_b(e: &Embedding, ens: &LabeledEnsemble) -> Result<f64> {
    generalization_bound(&EmbeddedEnsemble::new(e, ens)?)
}

/// `I_α(X:Q)` in bits of the classical-quantum state `Σ_x P(x)|x⟩⟨x| ⊗ ρ(x)`.
///
/// For `α ≠ 1` this is `α/(α−1) log₂ Tr[(Σ_x P(x) ρ(x)^α)^{1/α}]`; for `α = 1` the Holevo
/// quantity `S(Σ_x P(x)ρ(x)) − Σ_x P(x) S(ρ(x))`.
pub fn renyi_mutual_information(table: &EmbeddedEnsemble, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    let p = table.ensemble().input_marginal();
    if alpha == 1.0 {
        let mixed = von_neumann_entropy(&table.average());
        let conditional: f64 = p
            .iter()
            .zip(table.states())
            .map(|(w, s)| w * von_neumann_entropy(s))
            .sum();
        return Ok((mixed - conditional).max(0.0));
    }
    let m = weighted_power(table, &p, alpha);
    let t = trace_power(&m, 1.0 / alpha)?;
    Ok(alpha / (alpha - 1.0) * t.log2())
}

/// `I_α(X:Q|C)` in bits: `α/(α−1) log₂ Σ_c P(c) Tr[(Σ_x P(x|c) ρ(x)^α)^{1/α}]`, or
/// `Σ_c P(c) [S(ρ_c) − Σ_x P(x|c) S(ρ(x))]` at `α = 1`.
pub fn conditional_renyi_mi(table: &EmbeddedEnsemble, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    let ens = table.ensemble();
    let n = ens.len();
    if alpha == 1.0 {
        let entropies: Vec<f64> = table.states().iter().map(von_neumann_entropy).collect();
        let mut total = 0.0;
        for c in 0..ens.num_classes() {
            let inner: f64 = (0..n).map(|i| ens.p_x_given_c(i, c) * entropies[i]).sum();
            total += ens.p_c(c) * (von_neumann_entropy(&table.class_average(c)?) - inner);
        }
        return Ok(total.max(0.0));
    }
    let mut sum = 0.0;
    for c in 0..ens.num_classes() {
        let w: Vec<f64> = (0..n).map(|i| ens.p_x_given_c(i, c)).collect();
        let m = weighted_power(table, &w, alpha);
        sum += ens.p_c(c) * trace_power(&m, 1.0 / alpha)?;
    }
    Ok(alpha / (alpha - 1.0) * sum.log2())
}

/// Rademacher complexity bound and the generalization budget `2√(B/T) + √(2 ln(1/δ)/T)`.
///
/// The complexity bound is `½√(B/T)` for two classes and `√(N_C B/T)` otherwise. The
/// confidence term uses the natural logarithm.
pub fn rademacher_budget(b: f64, t: usize, num_classes: usize, delta: f64) -> Result<(f64, f64)> {
    if t == 0 {
        return Err(validation("training set size must be at least 1"));
    }
    if !(delta > 0.0 && delta < 1.0) {
        return Err(validation(format!("confidence parameter {delta} outside (0, 1)")));
    }
    if !(b > 0.0) || !b.is_finite() {
        return Err(validation(format!("bound {b} must be positive")));
    }
    if num_classes < 2 {
        return Err(validation("need at least two classes"));
    }
    let t = t as f64;
    let complexity = if num_classes == 2 {
        0.5 * (b / t).sqrt()
    } else {
        (num_classes as f64 * b / t).sqrt()
    };
    let budget = 2.0 * (b / t).sqrt() + (2.0 * (1.0 / delta).ln() / t).sqrt();
    Ok((complexity, budget))
}

/// Per-class quantities behind the purity/rank bound.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ClassPurityBound {
    /// `B_c = (Tr√σ_c)²` with `σ_c = Σ_x P(x|c) ρ(x)²`.
    pub b_c: f64,
    /// `Tr σ_c + √((r_c² − r_c)(Tr[σ_c]² − Tr[σ_c²]))`.
    pub bound: f64,
    pub rank: usize,
    pub trace: f64,
    pub purity: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PurityRankBound {
    pub classes: Vec<ClassPurityBound>,
    /// `(Σ_c √(P(c) bound_c))²`, an upper bound on `B`.
    pub combined: f64,
}

/// Bounds each class term `B_c` by the trace, purity and rank of `σ_c`.
pub fn purity_rank_bound(table: &EmbeddedEnsemble) -> Result<PurityRankBound> {
    let ens = table.ensemble();
    let mut classes = Vec::with_capacity(ens.num_classes());
    let mut root_sum = 0.0;
    for c in 0..ens.num_classes() {
        let w: Vec<f64> = (0..ens.len()).map(|i| ens.p_x_given_c(i, c)).collect();
        let sigma = weighted_second_moment(table, &w);
        let values = linalg::eigvalsh(&sigma)?;
        let trace: f64 = values.iter().sum();
        let purity: f64 = values.iter().map(|v| v * v).sum();
        let rank = values.iter().filter(|&&v| v > 1e-10).count();
        let r = rank as f64;
        let spread = ((r * r - r) * (trace * trace - purity)).max(0.0);
        let bound = trace + spread.sqrt();
        let b_c = linalg::psd_power(&values, 0.5).iter().sum::<f64>().powi(2);
        root_sum += (ens.p_c(c) * bound).sqrt();
        classes.push(ClassPurityBound {
            b_c,
            bound,
            rank,
            trace,
            purity,
        });
    }
    Ok(PurityRankBound {
        classes,
        combined: root_sum * root_sum,
    })
}

/// Entropy of the class average states, `Σ_c P(c) S(ρ_c)`.
pub(crate) fn class_entropies(table: &EmbeddedEnsemble) -> Result<Vec<(f64, DensityOperator)>> {
    let ens = table.ensemble();
    (0..ens.num_classes())
        .map(|c| {
            let rho = table.class_average(c)?;
            Ok((von_neumann_entropy(&rho), rho))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn uniform(n: usize) -> LabeledEnsemble {
        let pts: Vec<_> = (0..n).map(|i| (i % 2, vec![i as f64], 1.0 / n as f64)).collect();
        LabeledEnsemble::new(2, &pts).unwrap()
    }

    fn basis(n: usize) -> Embedding {
        Embedding::basis((0..n).map(|i| vec![i as f64]).collect())
    }

    #[test]
    fn constant_embedding_has_unit_bound_and_zero_information() {
        let ens = uniform(6);
        let e = Embedding::constant(DensityOperator::maximally_mixed(3));
        assert_abs_diff_eq!(gen_bound_b(&e, &ens).unwrap(), 1.0, epsilon = 1e-12);
        let t = EmbeddedEnsemble::new(&e, &ens).unwrap();
        for alpha in [0.5, 1.0, 2.0, 3.0] {
            assert_abs_diff_eq!(renyi_mutual_information(&t, alpha).unwrap(), 0.0, epsilon = 1e-12);
            assert_abs_diff_eq!(conditional_renyi_mi(&t, alpha).unwrap(), 0.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn basis_embedding_saturates_upper_bound() {
        let ens = uniform(8);
        let t = EmbeddedEnsemble::new(&basis(8), &ens).unwrap();
        assert_abs_diff_eq!(generalization_bound(&t).unwrap(), 8.0, epsilon = 1e-10);
        for alpha in [0.5, 1.0, 2.0, 4.0] {
            assert_abs_diff_eq!(renyi_mutual_information(&t, alpha).unwrap(), 3.0, epsilon = 1e-10);
        }
    }

    #[test]
    fn second_order_information_is_log_of_bound() {
        let ens = uniform(5);
        let t = EmbeddedEnsemble::new(&Embedding::depolarized(Embedding::angle(2), 0.2), &ens).unwrap();
        let b = generalization_bound(&t).unwrap();
        assert_abs_diff_eq!(renyi_mutual_information(&t, 2.0).unwrap(), b.log2(), epsilon = 1e-10);
    }

    #[test]
    fn rejects_nonpositive_order() {
        let ens = uniform(2);
        let t = EmbeddedEnsemble::new(&basis(2), &ens).unwrap();
        assert!(renyi_mutual_information(&t, 0.0).is_err());
        assert!(conditional_renyi_mi(&t, -1.0).is_err());
    }

    #[test]
    fn rademacher_arithmetic() {
        let (c, _) = rademacher_budget(4.0, 400, 2, 0.1).unwrap();
        assert_abs_diff_eq!(c, 0.05, epsilon = 1e-15);
        let (_, budget) = rademacher_budget(1.0, 1, 2, 1.0 - 1e-15).unwrap();
        assert_abs_diff_eq!(budget, 2.0, epsilon = 1e-6);
        let (c3, _) = rademacher_budget(2.0, 6, 3, 0.1).unwrap();
        assert_abs_diff_eq!(c3, 1.0, epsilon = 1e-15);
        assert!(rademacher_budget(1.0, 0, 2, 0.1).is_err());
        assert!(rademacher_budget(1.0, 1, 2, 1.0).is_err());
    }

    #[test]
    fn purity_rank_bound_on_orthogonal_pair() {
        let ens = LabeledEnsemble::new(1, &[(0, vec![0.0], 0.5), (0, vec![1.0], 0.5)]).unwrap();
        let t = EmbeddedEnsemble::new(&basis(2), &ens).unwrap();
        let r = purity_rank_bound(&t).unwrap();
        assert_abs_diff_eq!(r.classes[0].bound, 2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(r.classes[0].b_c, 2.0, epsilon = 1e-12);
        assert_eq!(r.classes[0].rank, 2);
    }
}
