//! Nelder–Mead simplex minimization.

use serde::{Deserialize, Serialize};

use crate::error::{validation, Result};

/// Simplex parameters. Coefficients default to reflection 1, expansion 2, contraction ½,
/// shrink ½.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct NelderMeadConfig {
    /// Offset of each initial simplex vertex along one coordinate axis.
    pub initial_step: f64,
    pub reflection: f64,
    pub expansion: f64,
    pub contraction: f64,
    pub shrink: f64,
    /// Budget of objective evaluations.
    pub max_evals: usize,
    /// Converged once all vertex values lie within `f_tol` of the best.
    pub f_tol: f64,
    /// and all vertices lie within `x_tol` (max-norm) of the best vertex.
    pub x_tol: f64,
}

impl Default for NelderMeadConfig {
    fn default() -> Self {
        Self {
            initial_step: 0.5,
            reflection: 1.0,
            expansion: 2.0,
            contraction: 0.5,
            shrink: 0.5,
            max_evals: 5000,
            f_tol: 1e-10,
            x_tol: 1e-8,
        }
    }
}

impl NelderMeadConfig {
    pub fn validate(&self) -> Result<()> {
        let ok = self.initial_step > 0.0
            && self.reflection > 0.0
            && self.expansion > 1.0
            && self.expansion > self.reflection
            && self.contraction > 0.0
            && self.contraction < 1.0
            && self.shrink > 0.0
            && self.shrink < 1.0
            && self.max_evals > 0
            && self.f_tol >= 0.0
            && self.x_tol >= 0.0;
        if !ok {
            return Err(validation("invalid Nelder–Mead parameters"));
        }
        Ok(())
    }
}

/// Outcome of a minimization.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Minimum {
    pub x: Vec<f64>,
    pub value: f64,
    pub evaluations: usize,
    /// `false` when the evaluation budget ran out before the tolerances were met.
    pub converged: bool,
    /// Best value after each iteration.
    pub history: Vec<f64>,
}

struct Counted<F> {
    f: F,
    evals: usize,
}

impl<F: FnMut(&[f64]) -> f64> Counted<F> {
    fn eval(&mut self, x: &[f64]) -> f64 {
        self.evals += 1;
        let v = (self.f)(x);
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    }
}

fn lerp(a: &[f64], b: &[f64], t: f64) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x + t * (y - x)).collect()
}

/// Minimizes `f` from `x0`.
pub fn nelder_mead<F: FnMut(&[f64]) -> f64>(f: F, x0: &[f64], cfg: &NelderMeadConfig) -> Result<Minimum> {
    cfg.validate()?;
    if x0.is_empty() {
        return Err(validation("cannot minimize over zero parameters"));
    }
    let n = x0.len();
    let mut obj = Counted { f, evals: 0 };
    let mut simplex: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
    simplex.push(x0.to_vec());
    for i in 0..n {
        let mut v = x0.to_vec();
        v[i] += cfg.initial_step;
        simplex.push(v);
    }
    let mut values: Vec<f64> = simplex.iter().map(|v| obj.eval(v)).collect();
    let mut history = Vec::new();
    let mut converged = false;

    loop {
        let mut order: Vec<usize> = (0..=n).collect();
        order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
        simplex = order.iter().map(|&i| simplex[i].clone()).collect();
        values = order.iter().map(|&i| values[i]).collect();
        history.push(values[0]);

        let f_spread = values.iter().map(|v| (v - values[0]).abs()).fold(0.0, f64::max);
        let x_spread = simplex[1..]
            .iter()
            .flat_map(|v| v.iter().zip(&simplex[0]).map(|(a, b)| (a - b).abs()))
            .fold(0.0, f64::max);
        if f_spread <= cfg.f_tol && x_spread <= cfg.x_tol {
            converged = true;
            break;
        }
        if obj.evals >= cfg.max_evals {
            break;
        }

        let mut centroid = vec![0.0; n];
        for v in &simplex[..n] {
            for (c, x) in centroid.iter_mut().zip(v) {
                *c += x / n as f64;
            }
        }
        let worst = simplex[n].clone();
        let xr = lerp(&centroid, &worst, -cfg.reflection);
        let fr = obj.eval(&xr);

        if fr < values[0] {
            let xe = lerp(&centroid, &worst, -cfg.reflection * cfg.expansion);
            let fe = obj.eval(&xe);
            if fe < fr {
                simplex[n] = xe;
                values[n] = fe;
            } else {
                simplex[n] = xr;
                values[n] = fr;
            }
            continue;
        }
        if fr < values[n - 1] {
            simplex[n] = xr;
            values[n] = fr;
            continue;
        }
        let (xc, fc, accept) = if fr < values[n] {
            let xc = lerp(&centroid, &worst, -cfg.reflection * cfg.contraction);
            let fc = obj.eval(&xc);
            (xc, fc, fc <= fr)
        } else {
            let xc = lerp(&centroid, &worst, cfg.contraction);
            let fc = obj.eval(&xc);
            (xc, fc, fc < values[n])
        };
        if accept {
            simplex[n] = xc;
            values[n] = fc;
            continue;
        }
        for i in 1..=n {
            simplex[i] = lerp(&simplex[0], &simplex[i], cfg.shrink);
            values[i] = obj.eval(&simplex[i]);
        }
    }

    Ok(Minimum {
        x: simplex[0].clone(),
        value: values[0],
        evaluations: obj.evals,
        converged,
        history,
    })
}

/// Runs [`nelder_mead`], then restarts once from the best point with `restart_step`.
pub fn nelder_mead_with_restart<F: FnMut(&[f64]) -> f64>(
    mut f: F,
    x0: &[f64],
    cfg: &NelderMeadConfig,
    restart_step: Option<f64>,
) -> Result<Minimum> {
    let first = nelder_mead(&mut f, x0, cfg)?;
    let Some(step) = restart_step else {
        return Ok(first);
    };
    let second_cfg = NelderMeadConfig {
        initial_step: step,
        ..cfg.clone()
    };
    let second = nelder_mead(&mut f, &first.x, &second_cfg)?;
    let mut history = first.history;
    history.extend(second.history);
    let (x, value) = if second.value <= first.value {
        (second.x, second.value)
    } else {
        (first.x, first.value)
    };
    Ok(Minimum {
        x,
        value,
        evaluations: first.evaluations + second.evaluations,
        converged: second.converged,
        history,
    })
}
