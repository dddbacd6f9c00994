#![allow(dead_code)]

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use qembed_core::embedding::LabeledEnsemble;
use qembed_core::quantum::random::{haar_pure_state, random_density};
use qembed_core::quantum::{CMatrix, DensityOperator, PureState};
use rand::Rng;

/// Ground state of `−Σ X_i X_{i+1} − h Σ Z_i − ε Σ X_i` on a periodic chain of `l` spins.
pub fn ising_ground_state(h: f64, l: usize, eps: f64) -> DVector<f64> {
    let dim = 1usize << l;
    let mut m = DMatrix::<f64>::zeros(dim, dim);
    for s in 0..dim {
        for i in 0..l {
            let z = if s >> i & 1 == 0 { 1.0 } else { -1.0 };
            m[(s, s)] -= h * z;
            let j = (i + 1) % l;
            m[(s ^ (1 << i) ^ (1 << j), s)] -= 1.0;
            m[(s ^ (1 << i), s)] -= eps;
        }
    }
    let eig = m.symmetric_eigen();
    let k = (0..dim)
        .min_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]))
        .unwrap();
    eig.eigenvectors.column(k).into_owned()
}

/// `|⟨ψ(h)|ψ(h′)⟩|` from dense diagonalization.
pub fn ising_overlap_ed(h: f64, hp: f64, l: usize) -> f64 {
    ising_ground_state(h, l, 1e-6).dot(&ising_ground_state(hp, l, 1e-6)).abs()
}

/// `n` nearly uniform unit vectors on the sphere.
pub fn fibonacci_sphere(n: usize) -> Vec<[f64; 3]> {
    let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
    (0..n)
        .map(|i| {
            let z = 1.0 - 2.0 * (i as f64 + 0.5) / n as f64;
            let r = (1.0 - z * z).sqrt();
            let phi = golden * i as f64;
            [r * phi.cos(), r * phi.sin(), z]
        })
        .collect()
}

/// `½(I + n·σ)`.
pub fn bloch_projector(n: [f64; 3]) -> CMatrix {
    let c = |re: f64, im: f64| Complex64::new(re, im);
    CMatrix::from_row_slice(
        2,
        2,
        &[
            c(0.5 * (1.0 + n[2]), 0.0),
            c(0.5 * n[0], -0.5 * n[1]),
            c(0.5 * n[0], 0.5 * n[1]),
            c(0.5 * (1.0 - n[2]), 0.0),
        ],
    )
}

/// Smallest error `p0 Tr[(I−Π)ρ0] + p1 Tr[Πρ1]` over projectors on the sphere grid and the
/// two trivial measurements.
pub fn grid_risk(rho0: &DensityOperator, rho1: &DensityOperator, p0: f64, grid: &[[f64; 3]]) -> f64 {
    let p1 = 1.0 - p0;
    let mut best = p0.min(p1);
    for &n in grid {
        let pi = bloch_projector(n);
        let a = (&pi * rho0.matrix()).trace().re;
        let b = (&pi * rho1.matrix()).trace().re;
        best = best.min(p0 * (1.0 - a) + p1 * b);
    }
    best
}

pub fn random_qubit<R: Rng>(rng: &mut R) -> DensityOperator {
    let rank = rng.random_range(1..=2);
    random_density(2, rank, rng).unwrap()
}

pub fn random_state<R: Rng>(d: usize, rng: &mut R) -> DensityOperator {
    let rank = rng.random_range(1..=d);
    random_density(d, rank, rng).unwrap()
}

pub fn random_pure<R: Rng>(d: usize, rng: &mut R) -> PureState {
    haar_pure_state(d, rng).unwrap()
}

/// Binary ensemble over inputs `0..n` with random joint weights.
pub fn random_binary_ensemble<R: Rng>(n: usize, rng: &mut R) -> LabeledEnsemble {
    let mut pts = Vec::with_capacity(2 * n);
    for i in 0..n {
        for c in 0..2 {
            let w: f64 = if i == c { 1.0 + rng.random::<f64>() } else { rng.random::<f64>() };
            pts.push((c, vec![i as f64], w));
        }
    }
    LabeledEnsemble::normalized(2, &pts).unwrap()
}
