//! Density operators, pure states and their scalar functionals.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::linalg::{
    self, check_same_dim, eigvalsh_unchecked, hermitian_part, trace, CMatrix, CVector, Eigh,
    VALIDATION_TOL,
};
use crate::error::{domain, validation, Error, Result};

/// Hermitian, positive semidefinite, unit-trace operator.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MatrixRepr", into = "MatrixRepr")]
pub struct DensityOperator {
    matrix: CMatrix,
}

/// JSON form of a complex square matrix: real and imaginary parts row by row.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixRepr {
    pub dim: usize,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

impl MatrixRepr {
    pub fn from_matrix(m: &CMatrix) -> Self {
        let n = m.nrows();
        Self {
            dim: n,
            re: (0..n).map(|i| (0..n).map(|j| m[(i, j)].re).collect()).collect(),
            im: (0..n).map(|i| (0..n).map(|j| m[(i, j)].im).collect()).collect(),
        }
    }

    pub fn to_matrix(&self) -> Result<CMatrix> {
        let n = self.dim;
        let rows_ok = |rows: &Vec<Vec<f64>>| rows.len() == n && rows.iter().all(|r| r.len() == n);
        if n == 0 || !rows_ok(&self.re) || !rows_ok(&self.im) {
            return Err(validation(format!("matrix entries do not match dim {n}")));
        }
        Ok(CMatrix::from_fn(n, n, |i, j| {
            Complex64::new(self.re[i][j], self.im[i][j])
        }))
    }
}

impl TryFrom<MatrixRepr> for DensityOperator {
    type Error = Error;

    fn try_from(repr: MatrixRepr) -> Result<Self> {
        DensityOperator::new(repr.to_matrix()?)
    }
}

impl From<DensityOperator> for MatrixRepr {
    fn from(rho: DensityOperator) -> Self {
        MatrixRepr::from_matrix(&rho.matrix)
    }
}

impl DensityOperator {
    /// Validates Hermiticity, unit trace and positivity within `VALIDATION_TOL`.
    pub fn new(matrix: CMatrix) -> Result<Self> {
        let h = hermitian_part(&matrix)?;
        let tr = trace(&h).re;
        if !tr.is_finite() || (tr - 1.0).abs() > VALIDATION_TOL {
            return Err(validation(format!("trace is {tr}, expected 1")));
        }
        let min = eigvalsh_unchecked(h.clone())[0];
        if min < -VALIDATION_TOL {
            return Err(validation(format!(
                "operator is not positive semidefinite (min eigenvalue {min:.3e})"
            )));
        }
        Ok(Self { matrix: h })
    }

    /// Wraps a matrix that is valid by construction. Checked in debug builds.
    pub(crate) fn from_trusted(matrix: CMatrix) -> Self {
        debug_assert!(DensityOperator::new(matrix.clone()).is_ok());
        Self { matrix }
    }

    /// Normalizes a positive semidefinite matrix to unit trace.
    pub fn from_unnormalized(matrix: CMatrix) -> Result<Self> {
        let tr = trace(&matrix).re;
        if !(tr > 0.0) || !tr.is_finite() {
            return Err(domain(format!("cannot normalize operator with trace {tr}")));
        }
        Self::new(matrix.unscale(tr))
    }

    pub fn maximally_mixed(d: usize) -> Self {
        Self {
            matrix: linalg::identity(d).unscale(d as f64),
        }
    }

    /// Projector onto basis vector `i` of `C^d`.
    pub fn basis(d: usize, i: usize) -> Result<Self> {
        if i >= d {
            return Err(validation(format!("basis index {i} out of range for dimension {d}")));
        }
        let mut m = CMatrix::zeros(d, d);
        m[(i, i)] = linalg::ONE;
        Ok(Self { matrix: m })
    }

    /// `Σ_i w_i ρ_i` for probability weights `w`.
    pub fn mixture(weights: &[f64], states: &[&DensityOperator]) -> Result<Self> {
        if weights.len() != states.len() || states.is_empty() {
            return Err(validation("mixture needs one weight per state"));
        }
        let total: f64 = weights.iter().sum();
        if weights.iter().any(|w| !(*w >= 0.0)) || (total - 1.0).abs() > VALIDATION_TOL {
            return Err(validation("mixture weights must be a probability vector"));
        }
        let d = states[0].dim();
        let mut acc = CMatrix::zeros(d, d);
        for (w, s) in weights.iter().zip(states) {
            check_same_dim(&acc, &s.matrix)?;
            acc += s.matrix.scale(*w);
        }
        Ok(Self::from_trusted(acc))
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix {
        self.matrix
    }

    /// Ascending eigenvalues.
    pub fn eigenvalues(&self) -> Vec<f64> {
        eigvalsh_unchecked(self.matrix.clone())
    }

    pub fn eigh(&self) -> Eigh {
        linalg::eigh_unchecked(self.matrix.clone())
    }

    /// `Tr ρ²`.
    pub fn purity(&self) -> f64 {
        self.matrix.iter().map(|z| z.norm_sqr()).sum()
    }

    /// Number of eigenvalues above `tol`.
    pub fn rank(&self, tol: f64) -> usize {
        self.eigenvalues().iter().filter(|&&v| v > tol).count()
    }

    pub fn tensor(&self, other: &DensityOperator) -> Self {
        Self {
            matrix: linalg::kron(&self.matrix, &other.matrix),
        }
    }

    /// `ρ^{⊗n}`.
    pub fn tensor_power(&self, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(validation("tensor power needs at least one copy"));
        }
        let mut out = self.clone();
        for _ in 1..n {
            out = out.tensor(self);
        }
        Ok(out)
    }

    /// `(1−ε)ρ + ε I/d`.
    pub fn depolarize(&self, epsilon: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&epsilon) {
            return Err(validation(format!("depolarizing strength {epsilon} outside [0, 1]")));
        }
        let d = self.dim();
        let m = self.matrix.scale(1.0 - epsilon) + linalg::identity(d).scale(epsilon / d as f64);
        Ok(Self { matrix: m })
    }

    /// Bloch vector `(Tr ρσ^x, Tr ρσ^y, Tr ρσ^z)` of a qubit state.
    pub fn bloch_vector(&self) -> Option<[f64; 3]> {
        if self.dim() != 2 {
            return None;
        }
        let m = &self.matrix;
        Some([
            2.0 * m[(0, 1)].re,
            -2.0 * m[(0, 1)].im,
            (m[(0, 0)] - m[(1, 1)]).re,
        ])
    }

    /// Partial trace over one factor of a bipartite space.
    pub fn partial_trace(&self, dim_a: usize, dim_b: usize, traced: linalg::Subsystem) -> Result<Self> {
        let m = linalg::partial_trace(&self.matrix, dim_a, dim_b, traced)?;
        Ok(Self::from_trusted(linalg::symmetrize(&m)))
    }
}

/// Unit vector in `C^d`.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    amplitudes: CVector,
}

impl PureState {
    /// Requires unit norm within `VALIDATION_TOL`.
    pub fn new(amplitudes: CVector) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(validation("state vector is empty"));
        }
        let norm = amplitudes.norm();
        if !norm.is_finite() || (norm - 1.0).abs() > VALIDATION_TOL {
            return Err(validation(format!("state vector has norm {norm}, expected 1")));
        }
        Ok(Self { amplitudes })
    }

    /// Rescales a nonzero vector to unit norm.
    pub fn normalized(amplitudes: CVector) -> Result<Self> {
        let norm = amplitudes.norm();
        if !(norm > 0.0) || !norm.is_finite() {
            return Err(domain("cannot normalize a zero or non-finite vector"));
        }
        Ok(Self {
            amplitudes: amplitudes.unscale(norm),
        })
    }

    pub fn basis(d: usize, i: usize) -> Result<Self> {
        if i >= d {
            return Err(validation(format!("basis index {i} out of range for dimension {d}")));
        }
        let mut v = CVector::zeros(d);
        v[i] = linalg::ONE;
        Ok(Self { amplitudes: v })
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &CVector {
        &self.amplitudes
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &PureState) -> Result<Complex64> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(self.amplitudes.dotc(&other.amplitudes))
    }

    /// `|⟨self|other⟩|`, the fidelity between pure states.
    pub fn fidelity(&self, other: &PureState) -> Result<f64> {
        Ok(self.inner(other)?.norm().min(1.0))
    }

    pub fn tensor(&self, other: &PureState) -> Self {
        Self {
            amplitudes: linalg::kron_vec(&self.amplitudes, &other.amplitudes),
        }
    }

    pub fn tensor_power(&self, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(validation("tensor power needs at least one copy"));
        }
        let mut out = self.clone();
        for _ in 1..n {
            out = out.tensor(self);
        }
        Ok(out)
    }

    /// `|ψ⟩⟨ψ|`.
    pub fn density(&self) -> DensityOperator {
        DensityOperator {
            matrix: &self.amplitudes * self.amplitudes.adjoint(),
        }
    }
}

/// Uhlmann fidelity `Tr√(√ρ σ √ρ)`, clamped to `[0, 1]`.
pub fn fidelity(rho: &DensityOperator, sigma: &DensityOperator) -> Result<f64> {
    check_same_dim(rho.matrix(), sigma.matrix())?;
    let sqrt_rho = rho.eigh().psd_power(0.5);
    let inner = linalg::symmetrize(&(&sqrt_rho * sigma.matrix() * &sqrt_rho));
    let f: f64 = linalg::psd_power(&eigvalsh_unchecked(inner), 0.5).iter().sum();
    Ok(f.clamp(0.0, 1.0))
}

/// `Tr[√ρ √σ]`.
pub fn sqrt_overlap(rho: &DensityOperator, sigma: &DensityOperator) -> Result<f64> {
    check_same_dim(rho.matrix(), sigma.matrix())?;
    let a = rho.eigh().psd_power(0.5);
    let b = sigma.eigh().psd_power(0.5);
    Ok(linalg::trace_product(&a, &b).re)
}

/// Shannon entropy in bits of a spectrum; entries at or below 1e-15 contribute nothing.
pub fn spectrum_entropy(values: &[f64]) -> f64 {
    values
        .iter()
        .filter(|&&v| v > 1e-15)
        .map(|&v| -v * v.log2())
        .sum::<f64>()
        .max(0.0)
}

/// Von Neumann entropy in bits.
pub fn von_neumann_entropy(rho: &DensityOperator) -> f64 {
    spectrum_entropy(&rho.eigenvalues())
}

/// Entropy in bits of a qubit state with purity `p`, from `λ± = (1 ± √(2p−1))/2`.
pub fn qubit_entropy_from_purity(purity: f64) -> Result<f64> {
    if !purity.is_finite() || purity < 0.5 - VALIDATION_TOL || purity > 1.0 + VALIDATION_TOL {
        return Err(domain(format!("qubit purity {purity} outside [1/2, 1]")));
    }
    let root = (2.0 * purity - 1.0).clamp(0.0, 1.0).sqrt();
    Ok(spectrum_entropy(&[0.5 * (1.0 - root), 0.5 * (1.0 + root)]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::linalg::from_real;
    use approx::assert_abs_diff_eq;

    fn qubit(x: f64, y: f64, z: f64) -> DensityOperator {
        let [sx, sy, sz] = linalg::pauli();
        let m = (linalg::identity(2) + sx.scale(x) + sy.scale(y) + sz.scale(z)).scale(0.5);
        DensityOperator::new(m).unwrap()
    }

    #[test]
    fn rejects_bad_trace_and_negative_spectrum() {
        assert!(DensityOperator::new(from_real(2, 2, &[0.6, 0.0, 0.0, 0.6])).is_err());
        assert!(DensityOperator::new(from_real(2, 2, &[1.2, 0.0, 0.0, -0.2])).is_err());
    }

    #[test]
    fn bloch_vector_round_trip() {
        let rho = qubit(0.1, -0.4, 0.5);
        let b = rho.bloch_vector().unwrap();
        assert_abs_diff_eq!(b[0], 0.1, epsilon = 1e-14);
        assert_abs_diff_eq!(b[1], -0.4, epsilon = 1e-14);
        assert_abs_diff_eq!(b[2], 0.5, epsilon = 1e-14);
    }

    #[test]
    fn fidelity_with_itself_is_one() {
        let rho = qubit(0.3, 0.2, -0.1);
        assert_abs_diff_eq!(fidelity(&rho, &rho).unwrap(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn fidelity_of_pure_states_is_overlap_modulus() {
        let a = PureState::normalized(CVector::from_vec(vec![
            Complex64::new(1.0, 0.0),
            Complex64::new(0.5, 0.5),
        ]))
        .unwrap();
        let b = PureState::basis(2, 0).unwrap();
        let direct = a.fidelity(&b).unwrap();
        let general = fidelity(&a.density(), &b.density()).unwrap();
        assert_abs_diff_eq!(direct, general, epsilon = 1e-7);
    }

    #[test]
    fn entropy_of_maximally_mixed_is_log_dim() {
        let rho = DensityOperator::maximally_mixed(8);
        assert_abs_diff_eq!(von_neumann_entropy(&rho), 3.0, epsilon = 1e-12);
    }

    #[test]
    fn purity_route_matches_spectrum() {
        let rho = qubit(0.2, 0.3, 0.4);
        let direct = von_neumann_entropy(&rho);
        let via = qubit_entropy_from_purity(rho.purity()).unwrap();
        assert_abs_diff_eq!(direct, via, epsilon = 1e-12);
        assert!(qubit_entropy_from_purity(0.3).is_err());
    }

    #[test]
    fn json_round_trip() {
        let rho = qubit(0.1, 0.2, 0.3);
        let text = serde_json::to_string(&rho).unwrap();
        let back: DensityOperator = serde_json::from_str(&text).unwrap();
        assert_abs_diff_eq!((back.matrix() - rho.matrix()).norm(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn depolarize_endpoints() {
        let rho = qubit(0.0, 0.0, 1.0);
        assert_eq!(rho.depolarize(0.0).unwrap(), rho);
        let mixed = rho.depolarize(1.0).unwrap();
        assert_abs_diff_eq!(mixed.purity(), 0.5, epsilon = 1e-14);
        assert!(rho.depolarize(1.5).is_err());
    }
}
