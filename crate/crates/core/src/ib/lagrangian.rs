use crate::embedding::EmbeddedEnsemble;
use crate::error::{validation, Result};
use crate::quantum::von_neumann_entropy;

fn check_beta(beta: f64) -> Result<()> {
    if !(beta >= 0.0) || !beta.is_finite() {
        return Err(validation(format!("β = {beta} must be a nonnegative number")));
    }
    Ok(())
}

/// `(1−β) S(ρ̄) − Σ_x P(x) S(ρ(x)) + β Σ_c P(c) S(ρ_c)` in bits.
pub fn ib_lagrangian(table: &EmbeddedEnsemble, beta: f64) -> Result<f64> {
    check_beta(beta)?;
    let ens = table.ensemble();
    let mixed = von_neumann_entropy(&table.average());
    let pointwise: f64 = (0..ens.len())
        .map(|i| ens.p_x(i) * von_neumann_entropy(table.state(i)))
        .sum();
    let mut classes = 0.0;
    for c in 0..ens.num_classes() {
        classes += ens.p_c(c) * von_neumann_entropy(&table.class_average(c)?);
    }
    Ok((1.0 - beta) * mixed - pointwise + beta * classes)
}

/// `I(X:Q) − β I(C:Q)` from mutual informations of the classical-quantum states.
pub fn ib_information_objective(table: &EmbeddedEnsemble, beta: f64) -> Result<f64> {
    check_beta(beta)?;
    let ixq = crate::bounds::renyi_mutual_information(table, 1.0)?;
    let icq = crate::bounds::class_information(table)?;
    Ok(ixq - beta * icq)
}
