//! Measurements: POVMs, the Helstrom measurement and SWAP-test sampling.

use rand::Rng;
use rand_distr::{Binomial, Distribution};

use super::linalg::{self, check_same_dim, trace_product, CMatrix, VALIDATION_TOL};
use super::state::DensityOperator;
use crate::error::{domain, validation, Result};

/// Eigenvalues of `p0ρ0 − p1ρ1` above this go to the class-0 projector.
pub const HELSTROM_TOL: f64 = 1e-12;

/// Positive operators summing to the identity.
#[derive(Debug, Clone)]
pub struct Povm {
    elements: Vec<CMatrix>,
}

impl Povm {
    pub fn new(elements: Vec<CMatrix>) -> Result<Self> {
        if elements.is_empty() {
            return Err(validation("POVM has no elements"));
        }
        let d = linalg::check_square(&elements[0])?;
        let mut total = CMatrix::zeros(d, d);
        let mut clean = Vec::with_capacity(elements.len());
        for e in &elements {
            check_same_dim(&elements[0], e)?;
            let h = linalg::hermitian_part(e)?;
            let min = linalg::eigvalsh(&h)?[0];
            if min < -VALIDATION_TOL {
                return Err(validation(format!(
                    "POVM element is not positive (min eigenvalue {min:.3e})"
                )));
            }
            total += &h;
            clean.push(h);
        }
        let defect = (total - linalg::identity(d))
            .iter()
            .fold(0.0f64, |m, z| m.max(z.norm()));
        if defect > VALIDATION_TOL {
            return Err(validation(format!(
                "POVM elements do not sum to identity (defect {defect:.3e})"
            )));
        }
        Ok(Self { elements: clean })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.elements[0].nrows()
    }

    pub fn element(&self, c: usize) -> &CMatrix {
        &self.elements[c]
    }

    pub fn elements(&self) -> &[CMatrix] {
        &self.elements
    }

    /// Outcome probability `Tr[Π_c ρ]`.
    pub fn probability(&self, c: usize, rho: &DensityOperator) -> Result<f64> {
        check_same_dim(&self.elements[c], rho.matrix())?;
        Ok(trace_product(&self.elements[c], rho.matrix()).re)
    }
}

/// Two-outcome POVM `{Π0, Π1}`.
#[derive(Debug, Clone)]
pub struct BinaryPovm {
    povm: Povm,
}

impl BinaryPovm {
    pub fn new(pi0: CMatrix, pi1: CMatrix) -> Result<Self> {
        Ok(Self {
            povm: Povm::new(vec![pi0, pi1])?,
        })
    }

    /// `{Π, I − Π}`.
    pub fn from_projector(pi0: CMatrix) -> Result<Self> {
        let d = linalg::check_square(&pi0)?;
        let pi1 = linalg::identity(d) - &pi0;
        Self::new(pi0, pi1)
    }

    pub fn pi0(&self) -> &CMatrix {
        self.povm.element(0)
    }

    pub fn pi1(&self) -> &CMatrix {
        self.povm.element(1)
    }

    pub fn as_povm(&self) -> &Povm {
        &self.povm
    }

    /// `1 − p0 Tr[Π0 ρ0] − p1 Tr[Π1 ρ1]`.
    pub fn error_probability(
        &self,
        rho0: &DensityOperator,
        rho1: &DensityOperator,
        p0: f64,
        p1: f64,
    ) -> Result<f64> {
        Ok(1.0 - p0 * self.povm.probability(0, rho0)? - p1 * self.povm.probability(1, rho1)?)
    }
}

/// Projector onto the positive part of `p0ρ0 − p1ρ1`; zero eigenvalues go to `Π1`.
pub fn helstrom_povm(
    rho0: &DensityOperator,
    rho1: &DensityOperator,
    p0: f64,
    p1: f64,
) -> Result<BinaryPovm> {
    check_same_dim(rho0.matrix(), rho1.matrix())?;
    check_priors(p0, p1)?;
    let diff = rho0.matrix().scale(p0) - rho1.matrix().scale(p1);
    let eig = linalg::eigh(&diff)?;
    let pi0 = eig.map(|x| if x > HELSTROM_TOL { 1.0 } else { 0.0 });
    BinaryPovm::from_projector(pi0)
}

/// Minimal error of discriminating two equiprobable states, `½(1 − ½‖ρ0 − ρ1‖₁)`.
pub fn helstrom_risk(rho0: &DensityOperator, rho1: &DensityOperator) -> Result<f64> {
    helstrom_risk_weighted(rho0, rho1, 0.5, 0.5)
}

/// Minimal error with priors `p0, p1`, `½(1 − ‖p0ρ0 − p1ρ1‖₁)`.
pub fn helstrom_risk_weighted(
    rho0: &DensityOperator,
    rho1: &DensityOperator,
    p0: f64,
    p1: f64,
) -> Result<f64> {
    check_same_dim(rho0.matrix(), rho1.matrix())?;
    check_priors(p0, p1)?;
    let diff = rho0.matrix().scale(p0) - rho1.matrix().scale(p1);
    Ok(0.5 * (1.0 - linalg::trace_norm(&diff)?))
}

fn check_priors(p0: f64, p1: f64) -> Result<()> {
    if !(p0 >= 0.0 && p1 >= 0.0) || (p0 + p1 - 1.0).abs() > VALIDATION_TOL {
        return Err(validation(format!("priors ({p0}, {p1}) do not sum to 1")));
    }
    Ok(())
}

/// Fraction of `shots` SWAP-derived Bernoulli trials that succeed with probability `f`.
pub fn swap_test_estimate<R: Rng + ?Sized>(f: f64, shots: usize, rng: &mut R) -> Result<f64> {
    if shots == 0 {
        return Err(validation("SWAP test needs at least one shot"));
    }
    if !f.is_finite() || !(-VALIDATION_TOL..=1.0 + VALIDATION_TOL).contains(&f) {
        return Err(domain(format!("success probability {f} outside [0, 1]")));
    }
    if f <= 0.0 {
        return Ok(0.0);
    }
    if f >= 1.0 {
        return Ok(1.0);
    }
    let binomial = Binomial::new(shots as u64, f).map_err(|e| domain(e.to_string()))?;
    Ok(binomial.sample(rng) as f64 / shots as f64)
}
