use num_complex::Complex64;

use super::{Embedding, LabeledEnsemble};
use crate::error::{validation, Error, Result};
use crate::quantum::linalg::{self, CMatrix, CVector};
use crate::quantum::{DensityOperator, PureState};

/// Residual norm below which a vector counts as lying in the span of earlier ones.
const SPAN_TOL: f64 = 1e-11;

/// An ensemble together with the state assigned to each of its inputs.
///
/// Pure states are stored in coordinates of an orthonormal basis of their span. Every
/// quantity computed from the table is unitarily invariant, so this loses nothing.
#[derive(Debug, Clone)]
pub struct EmbeddedEnsemble {
    ensemble: LabeledEnsemble,
    states: Vec<DensityOperator>,
    pure: Option<Vec<PureState>>,
    hilbert_dim: usize,
}

impl EmbeddedEnsemble {
    /// Evaluates `e` on every input of `ens`.
    pub fn new(e: &Embedding, ens: &LabeledEnsemble) -> Result<Self> {
        e.validate()?;
        if e.is_pure() {
            let states = ens
                .inputs()
                .iter()
                .map(|x| {
                    e.embed_pure(x)?
                        .ok_or_else(|| validation("pure embedding returned a mixed state"))
                })
                .collect::<Result<Vec<_>>>()?;
            Self::from_pure_states(ens, states)
        } else {
            let states = ens
                .inputs()
                .iter()
                .map(|x| e.embed(x))
                .collect::<Result<Vec<_>>>()?;
            Self::from_states(ens, states)
        }
    }

    /// Uses the given density operators, one per distinct input of `ens`.
    pub fn from_states(ens: &LabeledEnsemble, states: Vec<DensityOperator>) -> Result<Self> {
        check_table(ens, states.len())?;
        let d = states[0].dim();
        if let Some(s) = states.iter().find(|s| s.dim() != d) {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: s.dim(),
            });
        }
        Ok(Self {
            ensemble: ens.clone(),
            states,
            pure: None,
            hilbert_dim: d,
        })
    }

    /// Uses the given state vectors, one per distinct input of `ens`.
    pub fn from_pure_states(ens: &LabeledEnsemble, states: Vec<PureState>) -> Result<Self> {
        check_table(ens, states.len())?;
        let d = states[0].dim();
        if let Some(s) = states.iter().find(|s| s.dim() != d) {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: s.dim(),
            });
        }
        let pure = compress(states)?;
        let densities = pure.iter().map(PureState::density).collect();
        Ok(Self {
            ensemble: ens.clone(),
            states: densities,
            pure: Some(pure),
            hilbert_dim: d,
        })
    }

    pub fn ensemble(&self) -> &LabeledEnsemble {
        &self.ensemble
    }

    pub fn states(&self) -> &[DensityOperator] {
        &self.states
    }

    pub fn state(&self, i: usize) -> &DensityOperator {
        &self.states[i]
    }

    /// State vectors in span coordinates, when every state is pure.
    pub fn pure_states(&self) -> Option<&[PureState]> {
        self.pure.as_deref()
    }

    /// Dimension of the embedding's Hilbert space.
    pub fn hilbert_dim(&self) -> usize {
        self.hilbert_dim
    }

    /// Dimension of the stored matrices.
    pub fn working_dim(&self) -> usize {
        self.states[0].dim()
    }

    /// `Σ_x w(x) ρ(x)` for nonnegative weights.
    pub fn weighted_sum(&self, weights: &[f64]) -> CMatrix {
        let d = self.working_dim();
        let mut acc = CMatrix::zeros(d, d);
        for (w, s) in weights.iter().zip(&self.states) {
            if *w != 0.0 {
                acc += s.matrix().scale(*w);
            }
        }
        acc
    }

    /// `ρ_c = Σ_x P(x|c) ρ(x)`.
    pub fn class_average(&self, c: usize) -> Result<DensityOperator> {
        if c >= self.ensemble.num_classes() {
            return Err(validation(format!("class {c} is not in the ensemble")));
        }
        let weights: Vec<f64> = (0..self.ensemble.len())
            .map(|i| self.ensemble.p_x_given_c(i, c))
            .collect();
        Ok(DensityOperator::from_trusted(linalg::symmetrize(
            &self.weighted_sum(&weights),
        )))
    }

    /// `ρ̄ = Σ_x P(x) ρ(x)`.
    pub fn average(&self) -> DensityOperator {
        let weights = self.ensemble.input_marginal();
        DensityOperator::from_trusted(linalg::symmetrize(&self.weighted_sum(&weights)))
    }

    /// `(Tr ρ_c², rank ρ_c)` with rank counting eigenvalues above 1e-10.
    pub fn purity_stats(&self, c: usize) -> Result<(f64, usize)> {
        let rho = self.class_average(c)?;
        Ok((rho.purity(), rho.rank(1e-10)))
    }

    /// Overlap matrix `⟨ψ(x)|ψ(y)⟩` for pure tables.
    pub fn gram(&self) -> Option<CMatrix> {
        let pure = self.pure.as_ref()?;
        let n = pure.len();
        Some(CMatrix::from_fn(n, n, |i, j| {
            pure[i].amplitudes().dotc(pure[j].amplitudes())
        }))
    }

    /// Fidelity between the states of inputs `i` and `j`.
    pub fn fidelity(&self, i: usize, j: usize) -> Result<f64> {
        match &self.pure {
            Some(p) => p[i].fidelity(&p[j]),
            None => crate::quantum::fidelity(&self.states[i], &self.states[j]),
        }
    }
}

fn check_table(ens: &LabeledEnsemble, n: usize) -> Result<()> {
    if n != ens.len() || n == 0 {
        return Err(Error::DimensionMismatch {
            expected: ens.len(),
            found: n,
        });
    }
    Ok(())
}

/// Re-expresses the vectors in an orthonormal basis of their span when it is smaller
/// than the ambient space.
fn compress(states: Vec<PureState>) -> Result<Vec<PureState>> {
    let d = states[0].dim();
    if d <= 2 {
        return Ok(states);
    }
    let mut basis: Vec<CVector> = Vec::new();
    for s in &states {
        let mut w = s.amplitudes().clone();
        for _ in 0..2 {
            for q in &basis {
                let proj: Complex64 = q.dotc(&w);
                w.axpy(-proj, q, linalg::ONE);
            }
        }
        let norm = w.norm();
        if norm > SPAN_TOL {
            basis.push(w.unscale(norm));
            if basis.len() == d {
                return Ok(states);
            }
        }
    }
    states
        .iter()
        .map(|s| {
            let coords = CVector::from_iterator(
                basis.len(),
                basis.iter().map(|q| q.dotc(s.amplitudes())),
            );
            PureState::normalized(coords)
        })
        .collect()
}

/// `ρ_c` for embedding `e` on `ens`.
pub fn class_average(e: &Embedding, ens: &LabeledEnsemble, c: usize) -> Result<DensityOperator> {
    EmbeddedEnsemble::new(e, ens)?.class_average(c)
}

/// `(Tr ρ_c², rank ρ_c)` for embedding `e` on `ens`.
pub fn embedding_purity_stats(e: &Embedding, ens: &LabeledEnsemble, c: usize) -> Result<(f64, usize)> {
    EmbeddedEnsemble::new(e, ens)?.purity_stats(c)
}
