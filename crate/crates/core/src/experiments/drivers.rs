use std::time::Instant;

use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::classifier::{fidelity_classifier, FidelityMode, TrainingState};
use super::datasets::{gaussian_ensemble, two_moons, GaussianEnsemble};
use super::ising::{ising_angles, ising_kernel, ising_overlap_matrix, overlap_from_angles, IsingSpec};
use super::result::{ExperimentResult, Table};
use crate::bounds::{
    bayes_risk, class_information, generalization_bound, kernel_bound_b, optimal_risk, pgm_approx_bound,
    purity_rank_bound, renyi_mutual_information, risk_info_bounds, risk_report, RiskReport,
};
use crate::embedding::{EmbeddedEnsemble, Embedding, LabeledSample};
use crate::error::{validation, Result};
use crate::grid::linspace;
use crate::ib::{ib_sweep, vqib_train, Checkpoint, IbConfig, IbMode, VqibConfig};
use crate::rng;

/// Seed and worker count shared by all drivers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunOptions {
    pub seed: u64,
    /// Size of the rayon pool. Results do not depend on it.
    pub threads: usize,
}

impl Default for RunOptions {
    fn default() -> Self {
        Self { seed: 0, threads: 1 }
    }
}

fn in_pool<T: Send>(opts: &RunOptions, f: impl FnOnce() -> Result<T> + Send) -> Result<T> {
    if opts.threads == 0 {
        return Err(validation("thread count must be at least 1"));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.threads)
        .build()
        .map_err(|e| validation(format!("cannot start worker pool: {e}")))?;
    pool.install(f)
}

fn positive(name: &str, v: usize) -> Result<()> {
    if v == 0 {
        return Err(validation(format!("{name} must be at least 1")));
    }
    Ok(())
}

/// Two Gaussian classes on a uniform grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GaussianConfig {
    pub mean0: f64,
    pub mean1: f64,
    pub std: f64,
    pub grid: usize,
    pub window: (f64, f64),
}

impl Default for GaussianConfig {
    fn default() -> Self {
        Self {
            mean0: -10.0,
            mean1: 10.0,
            std: 7.0,
            grid: 400,
            window: (-31.0, 31.0),
        }
    }
}

impl GaussianConfig {
    pub fn build(&self) -> Result<GaussianEnsemble> {
        gaussian_ensemble(self.mean0, self.mean1, self.std, self.grid, self.window)
    }
}

#[derive(Serialize)]
struct GaussianSummary {
    bayes_risk: f64,
    excluded_mass: [f64; 2],
    window_warning: bool,
}

fn gaussian_summary(g: &GaussianEnsemble) -> GaussianSummary {
    GaussianSummary {
        bayes_risk: bayes_risk(&g.ensemble),
        excluded_mass: g.excluded_mass,
        window_warning: g.window_warning,
    }
}

/// Angle encoding with `N_Q` copies on the Gaussian ensemble.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Fig4Config {
    pub gaussian: GaussianConfig,
    pub nq_min: usize,
    pub nq_max: usize,
}

impl Default for Fig4Config {
    fn default() -> Self {
        Self {
            gaussian: GaussianConfig::default(),
            nq_min: 1,
            nq_max: 10,
        }
    }
}

impl Fig4Config {
    pub fn validate(&self) -> Result<()> {
        if self.nq_min < 1 || self.nq_max > 10 || self.nq_min > self.nq_max {
            return Err(validation(format!(
                "copy range {}..={} must lie within 1..=10",
                self.nq_min, self.nq_max
            )));
        }
        Ok(())
    }
}

/// Helstrom risk and generalization bound of the `N_Q`-copy angle encoding for each `N_Q`.
///
/// Emits table `fig4` (`N_Q, risk, B`) and document `fig4_summary`.
pub fn run_fig4(cfg: &Fig4Config, opts: &RunOptions) -> Result<ExperimentResult> {
    let start = Instant::now();
    cfg.validate()?;
    let g = cfg.gaussian.build()?;
    let ens = g.rescaled()?;
    let rows = in_pool(opts, || {
        (cfg.nq_min..=cfg.nq_max)
            .into_par_iter()
            .map(|n| {
                let table = EmbeddedEnsemble::new(&Embedding::angle(n), &ens)?;
                Ok((n, optimal_risk(&table)?, generalization_bound(&table)?))
            })
            .collect::<Result<Vec<_>>>()
    })?;
    let mut result = ExperimentResult::new("fig4", opts.seed, cfg)?;
    let mut t = Table::new("fig4", &["N_Q", "risk", "B"]);
    for (n, r, b) in rows {
        t.push(vec![n.into(), r.into(), b.into()]);
    }
    result.tables.push(t);
    result.document("fig4_summary", &gaussian_summary(&g))?;
    result.runtime = start.elapsed();
    Ok(result)
}

/// Ising kernel bound and SWAP-test phase classification.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct IsingConfig {
    #[serde(rename = "L")]
    pub l: usize,
    /// Kernel grid size.
    pub grid: usize,
    pub h_range: (f64, f64),
    pub train_per_phase: usize,
    pub shots: Vec<usize>,
    pub repetitions: usize,
    pub test_points: usize,
    /// Training fields avoid `[1 − gap, 1 + gap]`.
    pub critical_gap: f64,
}

impl Default for IsingConfig {
    fn default() -> Self {
        Self {
            l: 100,
            grid: 100,
            h_range: (0.0, 2.0),
            train_per_phase: 10,
            shots: vec![1, 10, 100],
            repetitions: 1000,
            test_points: 200,
            critical_gap: 1e-3,
        }
    }
}

/// Test fields with `|h − 1|` above this are summarized as far from criticality.
pub const FAR_FROM_CRITICAL: f64 = 0.2;

impl IsingConfig {
    pub fn spec(&self) -> IsingSpec {
        IsingSpec {
            l: self.l,
            h_range: self.h_range,
            grid: self.grid,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.spec().validate()?;
        let (lo, hi) = self.h_range;
        if !(self.critical_gap >= 0.0) || lo > 1.0 - self.critical_gap || hi < 1.0 + self.critical_gap {
            return Err(validation("field range must contain both phases outside the critical gap"));
        }
        positive("train_per_phase", self.train_per_phase)?;
        positive("repetitions", self.repetitions)?;
        positive("test_points", self.test_points)?;
        if self.shots.is_empty() || self.shots.contains(&0) {
            return Err(validation("shot counts must be a nonempty list of positive integers"));
        }
        Ok(())
    }
}

/// Phase label: 0 for `h < 1`, 1 otherwise.
pub fn ising_phase(h: f64) -> usize {
    usize::from(h >= 1.0)
}

struct IsingTask {
    training_errors: usize,
    test_errors: Vec<bool>,
}

fn ising_task(cfg: &IsingConfig, test_angles: &[Vec<f64>], test_fields: &[f64], shots: usize, rep: usize, seed: u64) -> Result<IsingTask> {
    let mut rng = rng::stream(seed, &[shots as u64, rep as u64]);
    let t = cfg.train_per_phase;
    let (lo, hi) = cfg.h_range;
    let mut fields = Vec::with_capacity(2 * t);
    for _ in 0..t {
        fields.push(rng.random_range(lo..=1.0 - cfg.critical_gap));
    }
    for _ in 0..t {
        fields.push(rng.random_range(1.0 + cfg.critical_gap..=hi));
    }
    let train_angles: Vec<Vec<f64>> = fields.iter().map(|&h| ising_angles(h, cfg.l)).collect::<Result<_>>()?;
    let train: Vec<TrainingState> = fields
        .iter()
        .enumerate()
        .map(|(id, &h)| TrainingState { class: ising_phase(h), id })
        .collect();
    let n = train.len();
    let angles = |id: usize| if id < n { &train_angles[id] } else { &test_angles[id - n] };
    let fid = |a: usize, b: usize| overlap_from_angles(angles(a), angles(b));
    let mode = FidelityMode::Shots(shots);
    let mut training_errors = 0;
    for s in &train {
        if fidelity_classifier(&train, s.id, fid, mode, &mut rng)? != s.class {
            training_errors += 1;
        }
    }
    let test_errors = test_fields
        .iter()
        .enumerate()
        .map(|(j, &h)| Ok(fidelity_classifier(&train, n + j, fid, mode, &mut rng)? != ising_phase(h)))
        .collect::<Result<_>>()?;
    Ok(IsingTask {
        training_errors,
        test_errors,
    })
}

#[derive(Serialize)]
struct ShotSummary {
    shots: usize,
    repetitions: usize,
    training_errors: usize,
    test_error: f64,
    test_error_far_from_critical: f64,
}

#[derive(Serialize)]
struct IsingSummary {
    #[serde(rename = "L")]
    l: usize,
    grid: usize,
    h_range: (f64, f64),
    #[serde(rename = "B")]
    b: f64,
    classification: Vec<ShotSummary>,
}

fn mean_std(values: impl Iterator<Item = f64> + Clone) -> (f64, f64) {
    let n = values.clone().count() as f64;
    let mean = values.clone().sum::<f64>() / n;
    if n < 2.0 {
        return (mean, 0.0);
    }
    let var = values.map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

/// Kernel bound `B` over the field grid and the shot-noisy fidelity classifier.
///
/// Emits document `ising_B`, table `ising_fidelity` (overlap grid) and one table
/// `ising_errors_S{S}` (`h, err_mean, err_std`) per shot count.
pub fn run_ising(cfg: &IsingConfig, opts: &RunOptions) -> Result<ExperimentResult> {
    let start = Instant::now();
    cfg.validate()?;
    let spec = cfg.spec();
    let test_fields = linspace(cfg.h_range.0, cfg.h_range.1, cfg.test_points);
    let test_angles: Vec<Vec<f64>> = test_fields.iter().map(|&h| ising_angles(h, cfg.l)).collect::<Result<_>>()?;
    let (b, overlaps, tasks) = in_pool(opts, || {
        let b = kernel_bound_b(&ising_kernel(&spec)?)?;
        let overlaps = ising_overlap_matrix(&spec)?;
        let jobs: Vec<(usize, usize)> = cfg
            .shots
            .iter()
            .flat_map(|&s| (0..cfg.repetitions).map(move |r| (s, r)))
            .collect();
        let tasks = jobs
            .par_iter()
            .map(|&(s, r)| ising_task(cfg, &test_angles, &test_fields, s, r, opts.seed))
            .collect::<Result<Vec<_>>>()?;
        Ok((b, overlaps, tasks))
    })?;

    let mut result = ExperimentResult::new("ising", opts.seed, cfg)?;
    let mut classification = Vec::new();
    for (k, &shots) in cfg.shots.iter().enumerate() {
        let group = &tasks[k * cfg.repetitions..(k + 1) * cfg.repetitions];
        let mut t = Table::new(format!("ising_errors_S{shots}"), &["h", "err_mean", "err_std"]);
        let mut means = Vec::with_capacity(test_fields.len());
        for (j, &h) in test_fields.iter().enumerate() {
            let (m, s) = mean_std(group.iter().map(move |task| f64::from(u8::from(task.test_errors[j]))));
            t.push(vec![h.into(), m.into(), s.into()]);
            means.push(m);
        }
        let far: Vec<f64> = test_fields
            .iter()
            .zip(&means)
            .filter(|(h, _)| (*h - 1.0).abs() > FAR_FROM_CRITICAL)
            .map(|(_, &m)| m)
            .collect();
        classification.push(ShotSummary {
            shots,
            repetitions: cfg.repetitions,
            training_errors: group.iter().map(|task| task.training_errors).sum(),
            test_error: means.iter().sum::<f64>() / means.len() as f64,
            test_error_far_from_critical: if far.is_empty() { 0.0 } else { far.iter().sum::<f64>() / far.len() as f64 },
        });
        result.tables.push(t);
    }
    result.document(
        "ising_B",
        &IsingSummary {
            l: cfg.l,
            grid: cfg.grid,
            h_range: cfg.h_range,
            b,
            classification,
        },
    )?;
    result.tables.push(Table::grid("ising_fidelity", &overlaps));
    result.runtime = start.elapsed();
    Ok(result)
}

/// Information-bottleneck sweep over a `β` grid on the Gaussian ensemble.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct IbSweepConfig {
    pub gaussian: GaussianConfig,
    pub beta_min: f64,
    pub beta_max: f64,
    pub beta_points: usize,
    pub iterations: usize,
    pub mode: IbMode,
    pub checkpoint_every: usize,
    pub perturbation: f64,
}

impl Default for IbSweepConfig {
    fn default() -> Self {
        Self {
            gaussian: GaussianConfig::default(),
            beta_min: 1.0,
            beta_max: 3.0,
            beta_points: 21,
            iterations: 1000,
            mode: IbMode::Mixed,
            checkpoint_every: 100,
            perturbation: 1e-3,
        }
    }
}

impl IbSweepConfig {
    pub fn betas(&self) -> Vec<f64> {
        linspace(self.beta_min, self.beta_max, self.beta_points)
    }

    pub fn solver(&self, seed: u64) -> IbConfig {
        IbConfig {
            beta: self.beta_min,
            iterations: self.iterations,
            mode: self.mode,
            seed,
            dim: 2,
            checkpoint_every: self.checkpoint_every,
            perturbation: self.perturbation,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.beta_min >= 0.0) || !(self.beta_max >= self.beta_min) || !self.beta_max.is_finite() {
            return Err(validation(format!("invalid β range [{}, {}]", self.beta_min, self.beta_max)));
        }
        positive("beta_points", self.beta_points)?;
        self.solver(0).validate()
    }
}

#[derive(Serialize)]
struct IbPoint {
    beta: f64,
    risk: f64,
    #[serde(rename = "B")]
    b: f64,
    lagrangian: f64,
    bloch: Vec<[f64; 3]>,
    trajectory: Vec<Checkpoint>,
}

#[derive(Serialize)]
struct IbSweepDocument {
    mode: IbMode,
    bayes_risk: f64,
    inputs: Vec<f64>,
    points: Vec<IbPoint>,
}

/// Emits table `ib_curve` (`beta, risk, B, lagrangian`) and document `ib_sweep` with Bloch
/// vectors and checkpoints per `β`.
pub fn run_ib_sweep(cfg: &IbSweepConfig, opts: &RunOptions) -> Result<ExperimentResult> {
    let start = Instant::now();
    cfg.validate()?;
    let g = cfg.gaussian.build()?;
    let betas = cfg.betas();
    let solver = cfg.solver(opts.seed);
    let solutions = in_pool(opts, || ib_sweep(&g.ensemble, &betas, &solver))?;

    let mut result = ExperimentResult::new("ib", opts.seed, cfg)?;
    let mut t = Table::new("ib_curve", &["beta", "risk", "B", "lagrangian"]);
    let mut points = Vec::with_capacity(solutions.len());
    for s in solutions {
        let last = s.final_checkpoint().clone();
        let risk = last.risk.ok_or_else(|| validation("risk needs a binary ensemble"))?;
        t.push(vec![s.beta.into(), risk.into(), last.bound_b.into(), last.lagrangian.into()]);
        points.push(IbPoint {
            beta: s.beta,
            risk,
            b: last.bound_b,
            lagrangian: last.lagrangian,
            bloch: s.bloch().ok_or_else(|| validation("Bloch vectors need a qubit embedding"))?,
            trajectory: s.trajectory,
        });
    }
    result.tables.push(t);
    result.document(
        "ib_sweep",
        &IbSweepDocument {
            mode: cfg.mode,
            bayes_risk: bayes_risk(&g.ensemble),
            inputs: g.ensemble.inputs().iter().map(|x| x[0]).collect(),
            points,
        },
    )?;
    result.runtime = start.elapsed();
    Ok(result)
}

/// Variational bottleneck on the two-moons data.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MoonsConfig {
    pub train_per_class: usize,
    pub test_per_class: usize,
    /// Per-class size of the second, larger test set; 0 skips it.
    pub large_test_per_class: usize,
    pub noise: f64,
    pub beta: f64,
    pub layers: usize,
    pub training: VqibConfig,
}

impl Default for MoonsConfig {
    fn default() -> Self {
        Self {
            train_per_class: 100,
            test_per_class: 100,
            large_test_per_class: 5000,
            noise: 0.3,
            beta: 30.0,
            layers: 3,
            training: VqibConfig::default(),
        }
    }
}

impl MoonsConfig {
    pub fn validate(&self) -> Result<()> {
        positive("train_per_class", self.train_per_class)?;
        positive("test_per_class", self.test_per_class)?;
        positive("layers", self.layers)?;
        if !(self.beta > 0.0) || !self.beta.is_finite() {
            return Err(validation(format!("β = {} must be positive", self.beta)));
        }
        if !(self.noise >= 0.0) || !self.noise.is_finite() {
            return Err(validation(format!("noise {} must be nonnegative", self.noise)));
        }
        self.training.optimizer.validate()?;
        if let Some(step) = self.training.restart_step {
            if !(step > 0.0) {
                return Err(validation("restart step must be positive"));
            }
        }
        Ok(())
    }
}

#[derive(Serialize)]
struct MoonsErrors {
    beta: f64,
    layers: usize,
    train_size: usize,
    test_size: usize,
    large_test_size: usize,
    training_error: f64,
    test_error: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    large_test_error: Option<f64>,
    loss: f64,
    evaluations: usize,
    converged: bool,
    max_infidelity_within_class: f64,
    max_infidelity: f64,
    weights: crate::embedding::ReuploadingWeights,
}

fn overlap_modulus(a: &[Complex64; 2], b: &[Complex64; 2]) -> f64 {
    (a[0].conj() * b[0] + a[1].conj() * b[1]).norm().min(1.0)
}

/// Trains the reuploading embedding and evaluates the exact fidelity classifier.
///
/// Emits document `errors`, table `fidelity_matrix` (training set, class 0 first) and table
/// `misclassified` (`set, x1, x2, class, predicted`).
pub fn run_moons_vqib(cfg: &MoonsConfig, opts: &RunOptions) -> Result<ExperimentResult> {
    let start = Instant::now();
    cfg.validate()?;
    let train = two_moons(cfg.train_per_class, cfg.noise, rng::derive_seed(opts.seed, &[0]))?;
    let test = two_moons(cfg.test_per_class, cfg.noise, rng::derive_seed(opts.seed, &[1]))?;
    let large = if cfg.large_test_per_class > 0 {
        two_moons(cfg.large_test_per_class, cfg.noise, rng::derive_seed(opts.seed, &[2]))?
    } else {
        Vec::new()
    };
    let fit = in_pool(opts, || vqib_train(&train, 2, cfg.beta, cfg.layers, &cfg.training, opts.seed))?;

    let mut amps = Vec::with_capacity(train.len() + test.len() + large.len());
    for s in train.iter().chain(&test).chain(&large) {
        amps.push(fit.weights.amplitudes(&s.x)?);
    }
    let n = train.len();
    let states: Vec<TrainingState> = train
        .iter()
        .enumerate()
        .map(|(id, s)| TrainingState { class: s.class, id })
        .collect();
    let fid = |a: usize, b: usize| overlap_modulus(&amps[a], &amps[b]);
    // Exact mode draws nothing from the generator.
    let mut unused = rng::stream(opts.seed, &[3]);
    let mut classify = |id: usize| fidelity_classifier(&states, id, fid, FidelityMode::Exact, &mut unused);

    let mut training_wrong = 0;
    for s in &states {
        if classify(s.id)? != s.class {
            training_wrong += 1;
        }
    }
    let mut misclassified = Table::new("misclassified", &["set", "x1", "x2", "class", "predicted"]);
    let mut error_rate = |set: &str, samples: &[LabeledSample], offset: usize| -> Result<f64> {
        let mut wrong = 0;
        for (j, s) in samples.iter().enumerate() {
            let predicted = classify(offset + j)?;
            if predicted != s.class {
                wrong += 1;
                misclassified.push(vec![set.into(), s.x[0].into(), s.x[1].into(), s.class.into(), predicted.into()]);
            }
        }
        Ok(wrong as f64 / samples.len() as f64)
    };
    let test_error = error_rate("test", &test, n)?;
    let large_test_error = if large.is_empty() {
        None
    } else {
        Some(error_rate("large_test", &large, n + test.len())?)
    };

    let matrix: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| fid(i, j)).collect()).collect();
    let mut max_within = 0.0f64;
    let mut max_all = 0.0f64;
    for i in 0..n {
        for j in i + 1..n {
            let inf = 1.0 - matrix[i][j];
            max_all = max_all.max(inf);
            if train[i].class == train[j].class {
                max_within = max_within.max(inf);
            }
        }
    }

    let mut result = ExperimentResult::new("vqib", opts.seed, cfg)?;
    result.document(
        "errors",
        &MoonsErrors {
            beta: cfg.beta,
            layers: cfg.layers,
            train_size: n,
            test_size: test.len(),
            large_test_size: large.len(),
            training_error: training_wrong as f64 / n as f64,
            test_error,
            large_test_error,
            loss: fit.loss,
            evaluations: fit.evaluations,
            converged: fit.converged,
            max_infidelity_within_class: max_within,
            max_infidelity: max_all,
            weights: fit.weights.clone(),
        },
    )?;
    result.tables.push(Table::grid("fidelity_matrix", &matrix));
    result.tables.push(misclassified);
    result.runtime = start.elapsed();
    Ok(result)
}

/// Risk and bound report for an angle encoding on the Gaussian ensemble.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BoundsConfig {
    pub gaussian: GaussianConfig,
    pub copies: usize,
    /// Depolarizing strength applied after encoding.
    pub epsilon: f64,
    pub training_size: usize,
    pub confidence: f64,
}

impl Default for BoundsConfig {
    fn default() -> Self {
        Self {
            gaussian: GaussianConfig::default(),
            copies: 1,
            epsilon: 0.0,
            training_size: 100,
            confidence: 0.05,
        }
    }
}

impl BoundsConfig {
    pub fn embedding(&self) -> Embedding {
        let e = Embedding::angle(self.copies);
        if self.epsilon > 0.0 {
            Embedding::depolarized(e, self.epsilon)
        } else {
            e
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(1..=10).contains(&self.copies) {
            return Err(validation(format!("copies {} outside 1..=10", self.copies)));
        }
        if !(0.0..=1.0).contains(&self.epsilon) {
            return Err(validation(format!("depolarizing strength {} outside [0, 1]", self.epsilon)));
        }
        positive("training_size", self.training_size)?;
        if !(self.confidence > 0.0 && self.confidence < 1.0) {
            return Err(validation(format!("confidence {} outside (0, 1)", self.confidence)));
        }
        self.embedding().validate()
    }
}

#[derive(Serialize)]
struct BoundsDocument {
    #[serde(flatten)]
    report: RiskReport,
    renyi2_mutual_information: f64,
    class_information: f64,
    chernoff_bound: f64,
    entropic_bound: f64,
    pgm_bound: f64,
    purity_rank_bound: f64,
    window_warning: bool,
}

/// Emits document `risk_report`.
pub fn run_bounds(cfg: &BoundsConfig, opts: &RunOptions) -> Result<ExperimentResult> {
    let start = Instant::now();
    cfg.validate()?;
    let g = cfg.gaussian.build()?;
    let ens = g.rescaled()?;
    let doc = in_pool(opts, || {
        let table = EmbeddedEnsemble::new(&cfg.embedding(), &ens)?;
        let (chernoff_bound, entropic_bound) = risk_info_bounds(&table)?;
        Ok(BoundsDocument {
            report: risk_report(&table, cfg.training_size, cfg.confidence)?,
            renyi2_mutual_information: renyi_mutual_information(&table, 2.0)?,
            class_information: class_information(&table)?,
            chernoff_bound,
            entropic_bound,
            pgm_bound: pgm_approx_bound(&table, 1)?,
            purity_rank_bound: purity_rank_bound(&table)?.combined,
            window_warning: g.window_warning,
        })
    })?;
    let mut result = ExperimentResult::new("bounds", opts.seed, cfg)?;
    result.document("risk_report", &doc)?;
    result.runtime = start.elapsed();
    Ok(result)
}
