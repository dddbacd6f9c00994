use serde::{Deserialize, Serialize};

use crate::error::{validation, Result};
use crate::quantum::linalg::VALIDATION_TOL;

/// One labelled training or test point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LabeledSample {
    pub class: usize,
    pub x: Vec<f64>,
}

impl LabeledSample {
    pub fn new(class: usize, x: Vec<f64>) -> Self {
        Self { class, x }
    }
}

/// Finite joint distribution `P(c, x)` over class labels and distinct inputs.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledEnsemble {
    inputs: Vec<Vec<f64>>,
    joint: Vec<Vec<f64>>,
    class_priors: Vec<f64>,
}

impl LabeledEnsemble {
    /// Builds from `(class, x, P(c, x))` triples. Repeated `(c, x)` pairs accumulate.
    /// Weights must sum to 1 and every class in `0..num_classes` must have positive mass.
    pub fn new(num_classes: usize, points: &[(usize, Vec<f64>, f64)]) -> Result<Self> {
        let ens = Self::accumulate(num_classes, points)?;
        let total: f64 = ens.class_priors.iter().sum();
        if (total - 1.0).abs() > VALIDATION_TOL {
            return Err(validation(format!("ensemble weights sum to {total}, expected 1")));
        }
        ens.check_classes()?;
        Ok(ens)
    }

    /// Like [`LabeledEnsemble::new`] but rescales positive weights to unit total.
    pub fn normalized(num_classes: usize, points: &[(usize, Vec<f64>, f64)]) -> Result<Self> {
        let mut ens = Self::accumulate(num_classes, points)?;
        let total: f64 = ens.class_priors.iter().sum();
        if !(total > 0.0) || !total.is_finite() {
            return Err(validation("ensemble has no positive weight"));
        }
        for row in &mut ens.joint {
            for w in row.iter_mut() {
                *w /= total;
            }
        }
        for p in &mut ens.class_priors {
            *p /= total;
        }
        ens.check_classes()?;
        Ok(ens)
    }

    /// Empirical distribution of a sample, each sample weighted `1/T`.
    pub fn empirical(num_classes: usize, samples: &[LabeledSample]) -> Result<Self> {
        if samples.is_empty() {
            return Err(validation("sample is empty"));
        }
        let w = 1.0 / samples.len() as f64;
        let points: Vec<_> = samples.iter().map(|s| (s.class, s.x.clone(), w)).collect();
        Self::normalized(num_classes, &points)
    }

    fn accumulate(num_classes: usize, points: &[(usize, Vec<f64>, f64)]) -> Result<Self> {
        if num_classes < 1 {
            return Err(validation("ensemble needs at least one class"));
        }
        let mut inputs: Vec<Vec<f64>> = Vec::new();
        let mut joint: Vec<Vec<f64>> = Vec::new();
        for (c, x, w) in points {
            if *c >= num_classes {
                return Err(validation(format!("class {c} outside 0..{num_classes}")));
            }
            if !(*w >= 0.0) || !w.is_finite() {
                return Err(validation(format!("weight {w} is not a nonnegative number")));
            }
            if x.iter().any(|v| !v.is_finite()) {
                return Err(validation("input is not finite"));
            }
            let i = match inputs.iter().position(|v| v == x) {
                Some(i) => i,
                None => {
                    inputs.push(x.clone());
                    joint.push(vec![0.0; num_classes]);
                    inputs.len() - 1
                }
            };
            joint[i][*c] += w;
        }
        let class_priors = (0..num_classes)
            .map(|c| joint.iter().map(|row| row[c]).sum())
            .collect();
        Ok(Self {
            inputs,
            joint,
            class_priors,
        })
    }

    fn check_classes(&self) -> Result<()> {
        if let Some(c) = self.class_priors.iter().position(|&p| !(p > 0.0)) {
            return Err(validation(format!("class {c} has no probability mass")));
        }
        Ok(())
    }

    /// Number of distinct inputs.
    pub fn len(&self) -> usize {
        self.inputs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inputs.is_empty()
    }

    pub fn num_classes(&self) -> usize {
        self.class_priors.len()
    }

    pub fn inputs(&self) -> &[Vec<f64>] {
        &self.inputs
    }

    pub fn input(&self, i: usize) -> &[f64] {
        &self.inputs[i]
    }

    /// `P(c, x_i)`.
    pub fn joint(&self, i: usize, c: usize) -> f64 {
        self.joint[i][c]
    }

    /// `P(x_i)`.
    pub fn p_x(&self, i: usize) -> f64 {
        self.joint[i].iter().sum()
    }

    /// `P(c)`.
    pub fn p_c(&self, c: usize) -> f64 {
        self.class_priors[c]
    }

    pub fn class_priors(&self) -> &[f64] {
        &self.class_priors
    }

    /// Marginal `P(x)` over distinct inputs.
    pub fn input_marginal(&self) -> Vec<f64> {
        (0..self.len()).map(|i| self.p_x(i)).collect()
    }

    /// `P(x_i | c)`.
    pub fn p_x_given_c(&self, i: usize, c: usize) -> f64 {
        self.joint[i][c] / self.class_priors[c]
    }

    /// `P(c | x_i)`, zero when `P(x_i) = 0`.
    pub fn p_c_given_x(&self, c: usize, i: usize) -> f64 {
        let px = self.p_x(i);
        if px > 0.0 {
            self.joint[i][c] / px
        } else {
            0.0
        }
    }

    /// `argmax_c P(c | x_i)`, ties toward the smaller class index.
    pub fn map_class(&self, i: usize) -> usize {
        let row = &self.joint[i];
        let mut best = 0;
        for c in 1..row.len() {
            if row[c] > row[best] {
                best = c;
            }
        }
        best
    }

    /// `H_α(X) = α/(α−1) log₂ Σ_x P(x)^{1/α}` in bits; `α = 1` gives the Shannon entropy.
    ///
    /// With this indexing `2^{H_2(X)} = (Σ_x √P(x))²`, the largest value of `B`.
    pub fn input_renyi_entropy(&self, alpha: f64) -> Result<f64> {
        if !(alpha > 0.0) || !alpha.is_finite() {
            return Err(validation(format!("Rényi order {alpha} must be positive and finite")));
        }
        let p = self.input_marginal();
        if (alpha - 1.0).abs() < 1e-12 {
            return Ok(crate::quantum::spectrum_entropy(&p));
        }
        let s: f64 = p.iter().filter(|&&v| v > 0.0).map(|v| v.powf(1.0 / alpha)).sum();
        Ok(alpha / (alpha - 1.0) * s.log2())
    }

    /// Shannon entropy of the class prior in bits.
    pub fn class_entropy(&self) -> f64 {
        crate::quantum::spectrum_entropy(&self.class_priors)
    }

    /// Same ensemble with every input mapped through `f`.
    pub fn map_inputs(&self, f: impl Fn(&[f64]) -> Vec<f64>) -> Result<Self> {
        let points: Vec<_> = self
            .inputs
            .iter()
            .zip(&self.joint)
            .flat_map(|(x, row)| {
                let y = f(x);
                row.iter()
                    .enumerate()
                    .filter(|(_, w)| **w > 0.0)
                    .map(move |(c, w)| (c, y.clone(), *w))
            })
            .collect();
        Self::normalized(self.num_classes(), &points)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn sample() -> LabeledEnsemble {
        LabeledEnsemble::new(
            2,
            &[
                (0, vec![0.0], 0.3),
                (0, vec![1.0], 0.2),
                (1, vec![1.0], 0.1),
                (1, vec![2.0], 0.4),
            ],
        )
        .unwrap()
    }

    #[test]
    fn marginals_and_conditionals() {
        let e = sample();
        assert_eq!(e.len(), 3);
        assert_abs_diff_eq!(e.p_c(0), 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(e.p_x(1), 0.3, epsilon = 1e-15);
        assert_abs_diff_eq!(e.p_x_given_c(1, 0), 0.4, epsilon = 1e-15);
        assert_abs_diff_eq!(e.p_c_given_x(1, 1), 1.0 / 3.0, epsilon = 1e-15);
        assert_eq!(e.map_class(1), 0);
    }

    #[test]
    fn rejects_bad_weights() {
        assert!(LabeledEnsemble::new(2, &[(0, vec![0.0], 0.5), (1, vec![1.0], 0.4)]).is_err());
        assert!(LabeledEnsemble::new(2, &[(0, vec![0.0], 1.0)]).is_err());
        assert!(LabeledEnsemble::new(2, &[(2, vec![0.0], 1.0)]).is_err());
    }

    #[test]
    fn empirical_merges_duplicates() {
        let s = vec![
            LabeledSample::new(0, vec![1.0]),
            LabeledSample::new(0, vec![1.0]),
            LabeledSample::new(1, vec![2.0]),
            LabeledSample::new(1, vec![1.0]),
        ];
        let e = LabeledEnsemble::empirical(2, &s).unwrap();
        assert_eq!(e.len(), 2);
        assert_abs_diff_eq!(e.joint(0, 0), 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(e.joint(0, 1), 0.25, epsilon = 1e-15);
    }

    #[test]
    fn ties_go_to_smaller_class() {
        let e = LabeledEnsemble::new(2, &[(0, vec![0.0], 0.5), (1, vec![0.0], 0.5)]).unwrap();
        assert_eq!(e.map_class(0), 0);
    }

    #[test]
    fn renyi_entropy_indexing() {
        let e = LabeledEnsemble::new(2, &[(0, vec![0.0], 0.25), (1, vec![1.0], 0.75)]).unwrap();
        let s = 0.25f64.sqrt() + 0.75f64.sqrt();
        assert_abs_diff_eq!(e.input_renyi_entropy(2.0).unwrap(), 2.0 * s.log2(), epsilon = 1e-14);
        let shannon = -(0.25f64 * 0.25f64.log2() + 0.75 * 0.75f64.log2());
        assert_abs_diff_eq!(e.input_renyi_entropy(1.0).unwrap(), shannon, epsilon = 1e-14);
        assert!(e.input_renyi_entropy(0.0).is_err());
    }
}
