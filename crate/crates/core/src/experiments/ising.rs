//! Ground-state overlaps of the transverse-field Ising chain
//! `H = −Σ_i σ^z_i σ^z_{i+1} − h Σ_i σ^x_i` with periodic boundary conditions.

use std::f64::consts::{FRAC_PI_2, PI};
use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::bounds::KernelMatrix;
use crate::error::{validation, Result};
use crate::grid::linspace;
use crate::quantum::linalg::CMatrix;

/// Chain length, field interval and grid size of an Ising kernel.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct IsingSpec {
    #[serde(rename = "L")]
    pub l: usize,
    pub h_range: (f64, f64),
    pub grid: usize,
}

impl Default for IsingSpec {
    fn default() -> Self {
        Self {
            l: 100,
            h_range: (0.0, 2.0),
            grid: 100,
        }
    }
}

impl IsingSpec {
    pub fn validate(&self) -> Result<()> {
        check_length(self.l)?;
        let (lo, hi) = self.h_range;
        if !(lo >= 0.0) || !(hi > lo) || !hi.is_finite() {
            return Err(validation(format!("invalid field range [{lo}, {hi}]")));
        }
        if self.grid < 2 {
            return Err(validation("field grid needs at least 2 points"));
        }
        Ok(())
    }

    /// Evenly spaced fields over `h_range`, endpoints included.
    pub fn fields(&self) -> Vec<f64> {
        linspace(self.h_range.0, self.h_range.1, self.grid)
    }
}

fn check_length(l: usize) -> Result<()> {
    if l == 0 || l % 2 != 0 {
        return Err(validation(format!("chain length {l} must be even and positive")));
    }
    Ok(())
}

fn check_field(h: f64) -> Result<()> {
    if !(h >= 0.0) || !h.is_finite() {
        return Err(validation(format!("field {h} must be nonnegative")));
    }
    Ok(())
}

/// `cos k` for the even-parity momenta `k = π(2j−1)/L`, `j = 1..L/2`.
fn momentum_cosine(j: usize, l: usize) -> f64 {
    (PI * (2 * j - 1) as f64 / l as f64).cos()
}

fn bogoliubov_angle(c: f64, h: f64) -> f64 {
    let denom = (1.0 + h * h - 2.0 * h * c).sqrt();
    if denom < 1e-300 {
        return FRAC_PI_2;
    }
    ((c - h) / denom).clamp(-1.0, 1.0).acos()
}

/// Bogoliubov angles `θ_j(h) = arccos((c_j − h)/√(1 + h² − 2h c_j))` for `j = 1..L/2`.
pub fn ising_angles(h: f64, l: usize) -> Result<Vec<f64>> {
    check_length(l)?;
    check_field(h)?;
    Ok((1..=l / 2).map(|j| bogoliubov_angle(momentum_cosine(j, l), h)).collect())
}

/// `Π_j cos((θ_j − θ′_j)/2)` over matching angle lists.
pub fn overlap_from_angles(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (0.5 * (x - y)).cos())
        .product::<f64>()
        .clamp(0.0, 1.0)
}

/// Ground-state overlap `|⟨ψ(h)|ψ(h′)⟩|` for a chain of even length `l`.
pub fn ising_overlap(h: f64, h_prime: f64, l: usize) -> Result<f64> {
    ising_sector_overlap(h, h_prime, l, 1..l / 2 + 1)
}

/// Contribution of momentum sectors `j ∈ sectors` (1-based) to [`ising_overlap`].
pub fn ising_sector_overlap(h: f64, h_prime: f64, l: usize, sectors: Range<usize>) -> Result<f64> {
    check_length(l)?;
    check_field(h)?;
    check_field(h_prime)?;
    if sectors.start == 0 || sectors.end > l / 2 + 1 {
        return Err(validation(format!("sectors {sectors:?} outside 1..={}", l / 2)));
    }
    Ok(sectors
        .map(|j| {
            let c = momentum_cosine(j, l);
            (0.5 * (bogoliubov_angle(c, h) - bogoliubov_angle(c, h_prime))).cos()
        })
        .product::<f64>()
        .clamp(0.0, 1.0))
}

/// Overlap matrix `f(h_i, h_j)` over the grid of `spec`.
pub fn ising_overlap_matrix(spec: &IsingSpec) -> Result<Vec<Vec<f64>>> {
    spec.validate()?;
    let angles: Vec<Vec<f64>> = spec
        .fields()
        .iter()
        .map(|&h| ising_angles(h, spec.l))
        .collect::<Result<_>>()?;
    Ok(angles
        .iter()
        .map(|a| angles.iter().map(|b| overlap_from_angles(a, b)).collect())
        .collect())
}

/// Kernel `K_{hh′} = p(h) f(h, h′)` with uniform `p` over the grid of `spec`.
pub fn ising_kernel(spec: &IsingSpec) -> Result<KernelMatrix> {
    let f = ising_overlap_matrix(spec)?;
    let n = f.len();
    let overlaps = CMatrix::from_fn(n, n, |i, j| f[i][j].into());
    KernelMatrix::from_overlaps(vec![1.0 / n as f64; n], overlaps)
}
