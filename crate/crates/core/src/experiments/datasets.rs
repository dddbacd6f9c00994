use std::f64::consts::{PI, SQRT_2};

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::embedding::{LabeledEnsemble, LabeledSample};
use crate::error::{validation, Result};
use crate::grid::linspace;
use crate::rng;

/// Largest mass of either Gaussian allowed outside the window before flagging.
pub const WINDOW_MASS_TOLERANCE: f64 = 0.01;

/// Affine map `x ↦ scale·x + offset`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AffineMap {
    pub scale: f64,
    pub offset: f64,
}

impl AffineMap {
    pub fn apply(&self, x: f64) -> f64 {
        self.scale * x + self.offset
    }
}

/// Two class-conditional Gaussians discretized on a uniform grid.
#[derive(Debug, Clone)]
pub struct GaussianEnsemble {
    /// Ensemble over the raw grid points.
    pub ensemble: LabeledEnsemble,
    /// Maps the window onto `[0, 2π]` for the angle encoding.
    pub rescale: AffineMap,
    /// Mass of each class Gaussian falling outside the window.
    pub excluded_mass: [f64; 2],
    /// Set when either excluded mass exceeds [`WINDOW_MASS_TOLERANCE`].
    pub window_warning: bool,
}

impl GaussianEnsemble {
    /// The ensemble with inputs mapped through [`GaussianEnsemble::rescale`].
    pub fn rescaled(&self) -> Result<LabeledEnsemble> {
        let map = self.rescale;
        self.ensemble.map_inputs(|x| x.iter().map(|&v| map.apply(v)).collect())
    }
}

fn tail_mass(mean: f64, std: f64, lo: f64, hi: f64) -> f64 {
    0.5 * libm::erfc((hi - mean) / (std * SQRT_2)) + 0.5 * libm::erfc((mean - lo) / (std * SQRT_2))
}

/// Discretizes `N(mean0, std²)` and `N(mean1, std²)` on `grid_n` points over `x_window`,
/// each normalized on the grid, with `P(c) = ½`.
pub fn gaussian_ensemble(mean0: f64, mean1: f64, std: f64, grid_n: usize, x_window: (f64, f64)) -> Result<GaussianEnsemble> {
    let (lo, hi) = x_window;
    if grid_n < 2 {
        return Err(validation("Gaussian grid needs at least 2 points"));
    }
    if !(std > 0.0) || !std.is_finite() {
        return Err(validation(format!("standard deviation {std} must be positive")));
    }
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() || !mean0.is_finite() || !mean1.is_finite() {
        return Err(validation(format!("invalid window [{lo}, {hi}]")));
    }
    let xs = linspace(lo, hi, grid_n);
    let mut points = Vec::with_capacity(2 * grid_n);
    for (c, mean) in [mean0, mean1].into_iter().enumerate() {
        let w: Vec<f64> = xs.iter().map(|x| (-(x - mean).powi(2) / (2.0 * std * std)).exp()).collect();
        let total: f64 = w.iter().sum();
        if !(total > 0.0) {
            return Err(validation(format!("class {c} Gaussian has no mass on the grid")));
        }
        points.extend(xs.iter().zip(&w).map(|(&x, &wx)| (c, vec![x], 0.5 * wx / total)));
    }
    let excluded_mass = [tail_mass(mean0, std, lo, hi), tail_mass(mean1, std, lo, hi)];
    let scale = 2.0 * PI / (hi - lo);
    Ok(GaussianEnsemble {
        ensemble: LabeledEnsemble::normalized(2, &points)?,
        rescale: AffineMap {
            scale,
            offset: -scale * lo,
        },
        window_warning: excluded_mass.iter().any(|&m| m > WINDOW_MASS_TOLERANCE),
        excluded_mass,
    })
}

/// Two interleaved half circles: class 0 at `(cos t, sin t)`, class 1 at `(1 − cos t, ½ − sin t)`,
/// `t ~ U[0, π]`, plus isotropic Gaussian noise of standard deviation `noise`.
///
/// Class 0 samples come first.
pub fn two_moons(n_per_class: usize, noise: f64, seed: u64) -> Result<Vec<LabeledSample>> {
    if n_per_class == 0 {
        return Err(validation("need at least one sample per class"));
    }
    if !(noise >= 0.0) || !noise.is_finite() {
        return Err(validation(format!("noise {noise} must be nonnegative")));
    }
    let mut rng = rng::stream(seed, &[]);
    let mut out = Vec::with_capacity(2 * n_per_class);
    for class in 0..2 {
        for _ in 0..n_per_class {
            let t = rng.random_range(0.0..=PI);
            let (s, c) = t.sin_cos();
            let (x, y) = if class == 0 { (c, s) } else { (1.0 - c, 0.5 - s) };
            let nx: f64 = rng.sample(StandardNormal);
            let ny: f64 = rng.sample(StandardNormal);
            out.push(LabeledSample::new(class, vec![x + noise * nx, y + noise * ny]));
        }
    }
    Ok(out)
}
