//! Dense complex linear algebra on Hermitian matrices.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{domain, numerical, validation, Error, Result};

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

/// Tolerance for Hermiticity, trace and norm checks.
pub const VALIDATION_TOL: f64 = 1e-10;

/// Eigenvalues below this magnitude are treated as zero by `logm_floored`.
pub const LOG_FLOOR: f64 = 1e-12;

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Spectral decomposition `A = V diag(values) V†` with ascending eigenvalues.
#[derive(Debug, Clone)]
pub struct Eigh {
    pub values: Vec<f64>,
    pub vectors: CMatrix,
}

impl Eigh {
    /// Rebuilds `V diag(f(values)) V†`.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> CMatrix {
        let n = self.values.len();
        let mut scaled = self.vectors.clone();
        for (j, &lambda) in self.values.iter().enumerate() {
            let s = Complex64::new(f(lambda), 0.0);
            for i in 0..n {
                scaled[(i, j)] *= s;
            }
        }
        scaled * self.vectors.adjoint()
    }

    /// Rebuilds `V diag(λ^p) V†` with eigenvalues below [`spectral_floor`] set to zero.
    pub fn psd_power(&self, p: f64) -> CMatrix {
        let floor = spectral_floor(&self.values);
        self.map(|x| if x > floor { x.powf(p) } else { 0.0 })
    }
}

/// Magnitude `8·n·ε·max|λ|` below which eigenvalues are indistinguishable from round-off.
pub fn spectral_floor(values: &[f64]) -> f64 {
    let scale = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    8.0 * values.len() as f64 * f64::EPSILON * scale
}

/// `λ^p` for eigenvalues above [`spectral_floor`], zero otherwise.
pub fn psd_power(values: &[f64], p: f64) -> Vec<f64> {
    let floor = spectral_floor(values);
    values
        .iter()
        .map(|&x| if x > floor { x.powf(p) } else { 0.0 })
        .collect()
}

pub fn identity(d: usize) -> CMatrix {
    CMatrix::identity(d, d)
}

pub fn check_square(a: &CMatrix) -> Result<usize> {
    if a.nrows() != a.ncols() {
        return Err(validation(format!(
            "matrix is not square: {}x{}",
            a.nrows(),
            a.ncols()
        )));
    }
    if a.nrows() == 0 {
        return Err(validation("matrix is empty"));
    }
    Ok(a.nrows())
}

pub fn check_same_dim(a: &CMatrix, b: &CMatrix) -> Result<()> {
    if a.nrows() != b.nrows() || a.ncols() != b.ncols() {
        return Err(Error::DimensionMismatch {
            expected: a.nrows(),
            found: b.nrows(),
        });
    }
    Ok(())
}

/// Largest entry of `|A − A†|`.
pub fn hermitian_defect(a: &CMatrix) -> f64 {
    let n = a.nrows();
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in i..n {
            worst = worst.max((a[(i, j)] - a[(j, i)].conj()).norm());
        }
    }
    worst
}

/// `(A + A†)/2`.
pub fn symmetrize(a: &CMatrix) -> CMatrix {
    (a + a.adjoint()).scale(0.5)
}

/// Validates Hermiticity within `VALIDATION_TOL` and returns the symmetrized matrix.
pub fn hermitian_part(a: &CMatrix) -> Result<CMatrix> {
    check_square(a)?;
    let defect = hermitian_defect(a);
    if !defect.is_finite() || defect > VALIDATION_TOL {
        return Err(validation(format!(
            "matrix is not Hermitian (defect {defect:.3e})"
        )));
    }
    Ok(symmetrize(a))
}

/// Eigendecomposition of a Hermitian matrix. Input is symmetrized first.
pub fn eigh(a: &CMatrix) -> Result<Eigh> {
    let h = hermitian_part(a)?;
    Ok(eigh_unchecked(h))
}

/// Eigendecomposition of a matrix already known to be Hermitian.
pub(crate) fn eigh_unchecked(h: CMatrix) -> Eigh {
    let n = h.nrows();
    if n == 1 {
        return Eigh {
            values: vec![h[(0, 0)].re],
            vectors: identity(1),
        };
    }
    let decomposition = h.symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| decomposition.eigenvalues[i].total_cmp(&decomposition.eigenvalues[j]));
    let values = order.iter().map(|&i| decomposition.eigenvalues[i]).collect();
    let vectors = CMatrix::from_fn(n, n, |r, c| decomposition.eigenvectors[(r, order[c])]);
    Eigh { values, vectors }
}

/// Ascending eigenvalues of a Hermitian matrix.
pub fn eigvalsh(a: &CMatrix) -> Result<Vec<f64>> {
    let h = hermitian_part(a)?;
    Ok(eigvalsh_unchecked(h))
}

pub(crate) fn eigvalsh_unchecked(h: CMatrix) -> Vec<f64> {
    let n = h.nrows();
    if n == 1 {
        return vec![h[(0, 0)].re];
    }
    if n == 2 {
        let a = h[(0, 0)].re;
        let d = h[(1, 1)].re;
        let b = h[(0, 1)].norm();
        let mean = 0.5 * (a + d);
        let radius = (0.25 * (a - d) * (a - d) + b * b).sqrt();
        return vec![mean - radius, mean + radius];
    }
    let mut values: Vec<f64> = h.symmetric_eigenvalues().iter().copied().collect();
    values.sort_by(f64::total_cmp);
    values
}

/// `f(A)` for Hermitian `A` through its spectral decomposition.
pub fn matrix_function(a: &CMatrix, f: impl Fn(f64) -> f64) -> Result<CMatrix> {
    let eig = eigh(a)?;
    let out = eig.map(&f);
    if out.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(numerical("matrix function produced a non-finite entry"));
    }
    Ok(out)
}

/// Principal square root of a positive semidefinite matrix.
pub fn sqrtm_psd(a: &CMatrix) -> Result<CMatrix> {
    let eig = eigh(a)?;
    check_psd_spectrum(&eig.values)?;
    Ok(eig.psd_power(0.5))
}

/// Matrix logarithm with eigenvalues floored at `LOG_FLOOR`.
pub fn logm_floored(a: &CMatrix) -> Result<CMatrix> {
    let eig = eigh(a)?;
    check_psd_spectrum(&eig.values)?;
    Ok(eig.map(|x| x.max(LOG_FLOOR).ln()))
}

/// Exponential of a Hermitian matrix.
pub fn expm_hermitian(a: &CMatrix) -> Result<CMatrix> {
    matrix_function(a, f64::exp)
}

fn check_psd_spectrum(values: &[f64]) -> Result<()> {
    let scale = values.iter().fold(1.0f64, |m, v| m.max(v.abs()));
    if let Some(&min) = values.first() {
        if min < -VALIDATION_TOL * scale {
            return Err(domain(format!(
                "matrix is not positive semidefinite (min eigenvalue {min:.3e})"
            )));
        }
    }
    Ok(())
}

/// Trace norm of a Hermitian matrix, `Σ|λ|`.
pub fn trace_norm(a: &CMatrix) -> Result<f64> {
    Ok(eigvalsh(a)?.iter().map(|v| v.abs()).sum())
}

/// Schatten 1-norm of an arbitrary square matrix, `Tr√(AA†)`.
pub fn schatten_one_norm(a: &CMatrix) -> Result<f64> {
    check_square(a)?;
    let gram = a * a.adjoint();
    Ok(psd_power(&eigvalsh_unchecked(symmetrize(&gram)), 0.5).iter().sum())
}

pub fn trace(a: &CMatrix) -> Complex64 {
    a.diagonal().iter().sum()
}

/// `Tr[AB]` without forming the product.
pub fn trace_product(a: &CMatrix, b: &CMatrix) -> Complex64 {
    let n = a.nrows();
    let mut acc = ZERO;
    for i in 0..n {
        for k in 0..n {
            acc += a[(i, k)] * b[(k, i)];
        }
    }
    acc
}

/// Kronecker product `A ⊗ B`.
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

pub fn kron_vec(a: &CVector, b: &CVector) -> CVector {
    a.kronecker(b)
}

/// Which factor of a bipartite space to trace out.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    First,
    Second,
}

/// Partial trace over one factor of `C^{dim_a} ⊗ C^{dim_b}`.
pub fn partial_trace(m: &CMatrix, dim_a: usize, dim_b: usize, traced: Subsystem) -> Result<CMatrix> {
    let n = check_square(m)?;
    if dim_a * dim_b != n {
        return Err(Error::DimensionMismatch {
            expected: dim_a * dim_b,
            found: n,
        });
    }
    Ok(match traced {
        Subsystem::Second => CMatrix::from_fn(dim_a, dim_a, |i, j| {
            (0..dim_b).map(|k| m[(i * dim_b + k, j * dim_b + k)]).sum()
        }),
        Subsystem::First => CMatrix::from_fn(dim_b, dim_b, |i, j| {
            (0..dim_a).map(|k| m[(k * dim_b + i, k * dim_b + j)]).sum()
        }),
    })
}

/// Pauli matrices `σ^x, σ^y, σ^z`.
pub fn pauli() -> [CMatrix; 3] {
    let i = Complex64::new(0.0, 1.0);
    [
        CMatrix::from_row_slice(2, 2, &[ZERO, ONE, ONE, ZERO]),
        CMatrix::from_row_slice(2, 2, &[ZERO, -i, i, ZERO]),
        CMatrix::from_row_slice(2, 2, &[ONE, ZERO, ZERO, -ONE]),
    ]
}

/// Builds a real-valued matrix into complex storage.
pub fn from_real(rows: usize, cols: usize, data: &[f64]) -> CMatrix {
    CMatrix::from_row_iterator(rows, cols, data.iter().map(|&x| Complex64::new(x, 0.0)))
}
