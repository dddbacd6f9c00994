//! Random states and unitaries for tests and initialization.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use super::linalg::{self, CMatrix, CVector};
use super::state::{DensityOperator, PureState};
use crate::error::{validation, Result};

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im)
}

/// Matrix with i.i.d. standard complex Gaussian entries.
pub fn ginibre<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| gaussian(rng))
}

/// Haar-distributed pure state in `C^d`.
pub fn haar_pure_state<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Result<PureState> {
    if d == 0 {
        return Err(validation("dimension must be positive"));
    }
    PureState::normalized(CVector::from_fn(d, |_, _| gaussian(rng)))
}

/// Haar-distributed unitary from the phase-corrected QR decomposition of a Ginibre matrix.
pub fn haar_unitary<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Result<CMatrix> {
    if d == 0 {
        return Err(validation("dimension must be positive"));
    }
    let qr = ginibre(d, d, rng).qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..d {
        let diag = r[(j, j)];
        let phase = if diag.norm() > 0.0 { diag / diag.norm() } else { linalg::ONE };
        for i in 0..d {
            q[(i, j)] *= phase;
        }
    }
    Ok(q)
}

/// Random density operator of rank at most `rank`, induced by partial trace of a Haar state.
pub fn random_density<R: Rng + ?Sized>(d: usize, rank: usize, rng: &mut R) -> Result<DensityOperator> {
    if d == 0 || rank == 0 {
        return Err(validation("dimension and rank must be positive"));
    }
    let g = ginibre(d, rank, rng);
    DensityOperator::from_unnormalized(linalg::symmetrize(&(&g * g.adjoint())))
}

/// Random Hermitian matrix with Gaussian entries scaled by `scale`.
pub fn random_hermitian<R: Rng + ?Sized>(d: usize, scale: f64, rng: &mut R) -> CMatrix {
    linalg::symmetrize(&ginibre(d, d, rng)).scale(scale)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn haar_unitary_is_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let u = haar_unitary(5, &mut rng).unwrap();
        let err = (&u * u.adjoint() - linalg::identity(5)).norm();
        assert_abs_diff_eq!(err, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn random_density_has_requested_rank() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let rho = random_density(6, 2, &mut rng).unwrap();
        assert_eq!(rho.rank(1e-10), 2);
    }
}
