//! Kernel-spectrum form of the generalization bound for pure-state embeddings.

use crate::embedding::EmbeddedEnsemble;
use crate::error::{numerical, validation, Error, Result};
use crate::quantum::linalg::{self, CMatrix, VALIDATION_TOL};
use crate::quantum::PureState;

/// Eigenvalues of the kernel above this (negative) threshold are clipped to zero.
pub const KERNEL_CLIP: f64 = -1e-8;

/// Normalized kernel `K_{xy} = p(x)⟨ψ(x)|ψ(y)⟩`.
#[derive(Debug, Clone)]
pub struct KernelMatrix {
    weights: Vec<f64>,
    overlaps: CMatrix,
}

impl KernelMatrix {
    /// From probability weights and a Hermitian overlap matrix with unit diagonal.
    pub fn from_overlaps(weights: Vec<f64>, overlaps: CMatrix) -> Result<Self> {
        let n = linalg::check_square(&overlaps)?;
        if weights.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: weights.len(),
            });
        }
        let total: f64 = weights.iter().sum();
        if weights.iter().any(|w| !(*w >= 0.0)) || (total - 1.0).abs() > VALIDATION_TOL {
            return Err(validation("kernel weights must be a probability vector"));
        }
        let overlaps = linalg::hermitian_part(&overlaps)?;
        if (0..n).any(|i| (overlaps[(i, i)].re - 1.0).abs() > VALIDATION_TOL) {
            return Err(validation("overlap matrix must have unit diagonal"));
        }
        Ok(Self { weights, overlaps })
    }

    pub fn from_pure_states(weights: Vec<f64>, states: &[PureState]) -> Result<Self> {
        let n = states.len();
        let overlaps = CMatrix::from_fn(n, n, |i, j| states[i].amplitudes().dotc(states[j].amplitudes()));
        Self::from_overlaps(weights, overlaps)
    }

    /// Kernel of a pure embedded ensemble with `p = P(x)`.
    pub fn from_embedded(table: &EmbeddedEnsemble) -> Result<Self> {
        let gram = table
            .gram()
            .ok_or_else(|| validation("kernel form needs a pure-state embedding"))?;
        Self::from_overlaps(table.ensemble().input_marginal(), gram)
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn overlaps(&self) -> &CMatrix {
        &self.overlaps
    }

    /// `K_{xy} = p(x) G_{xy}`.
    pub fn entries(&self) -> CMatrix {
        let n = self.len();
        CMatrix::from_fn(n, n, |i, j| self.overlaps[(i, j)].scale(self.weights[i]))
    }

    /// `√p G √p`, Hermitian and similar to `K`.
    pub fn symmetric_form(&self) -> CMatrix {
        let n = self.len();
        let s: Vec<f64> = self.weights.iter().map(|w| w.sqrt()).collect();
        CMatrix::from_fn(n, n, |i, j| self.overlaps[(i, j)].scale(s[i] * s[j]))
    }

    /// Ascending kernel eigenvalues; round-off negatives above `KERNEL_CLIP` become zero.
    pub fn spectrum(&self) -> Result<Vec<f64>> {
        let values = linalg::eigvalsh(&self.symmetric_form())?;
        if let Some(&min) = values.first() {
            if min < KERNEL_CLIP {
                return Err(numerical(format!(
                    "kernel has eigenvalue {min:.3e} below {KERNEL_CLIP:e}"
                )));
            }
        }
        Ok(values.into_iter().map(|v| v.max(0.0)).collect())
    }

    /// `Tr√K = Σ_k √η_k`.
    pub fn trace_sqrt(&self) -> Result<f64> {
        Ok(linalg::psd_power(&self.spectrum()?, 0.5).iter().sum())
    }
}

/// `(Σ_k √η_k)²` over the kernel spectrum.
pub fn kernel_bound_b(k: &KernelMatrix) -> Result<f64> {
    Ok(k.trace_sqrt()?.powi(2))
}

/// Second-order expansion of `Tr√K` around a diagonal kernel:
/// `Σ_x √p(x) − ¼ Σ_{x≠y} √(p(x)p(y)) / (√p(x) + √p(y)) · |G_{xy}|²`.
pub fn almost_diagonal_expansion(k: &KernelMatrix) -> f64 {
    let s: Vec<f64> = k.weights.iter().map(|w| w.sqrt()).collect();
    let mut correction = 0.0;
    for x in 0..k.len() {
        for y in 0..k.len() {
            let denom = s[x] + s[y];
            if x != y && denom > 0.0 {
                correction += s[x] * s[y] / denom * k.overlaps[(x, y)].norm_sqr();
            }
        }
    }
    s.iter().sum::<f64>() - 0.25 * correction
}
