//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits nonzero if any fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use qembed_core::bounds::{
    approximation_error, bayes_delta, bayes_risk, generalization_bound, kernel_bound_b, optimal_risk,
    pgm_approx_bound_from_fidelities, risk_info_bounds, fidelity_matrix, KernelMatrix,
};
use qembed_core::embedding::{EmbeddedEnsemble, Embedding, LabeledEnsemble, ReuploadingWeights};
use qembed_core::experiments::{
    gaussian_ensemble, ising_kernel, ising_overlap, run_bounds, run_fig4, run_ib_sweep, run_ising, run_moons_vqib,
    two_moons, BoundsConfig, ExperimentResult, Fig4Config, IbSweepConfig, IsingConfig, IsingSpec, MoonsConfig,
    OutputFormat, RunOptions,
};
use qembed_core::ib::{ib_lagrangian, vqib_loss};
use qembed_core::quantum::linalg::{schatten_one_norm, sqrtm_psd, trace};
use qembed_core::quantum::random::ginibre;
use qembed_core::quantum::{fidelity, helstrom_risk_weighted, trace_norm, CMatrix, Subsystem};
use qembed_core::rng::stream;
use rand::Rng;
use serde_json::Value;

use common::*;

const INSTANCES: usize = 1000;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn secs(d: Duration) -> String {
    format!("{:.2} s", d.as_secs_f64())
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let g = gaussian_ensemble(-10.0, 10.0, 7.0, 400, (-31.0, 31.0)).unwrap();
    let r = bayes_risk(&g.ensemble);
    let t = start.elapsed();
    let pass = (r - 0.076).abs() <= 0.005 && t < Duration::from_secs(1);
    outcome(pass, format!("Bayes risk {r:.5} (0.076 ± 0.005), runtime {} (< 1 s)", secs(t)))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let b = kernel_bound_b(&ising_kernel(&IsingSpec::default()).unwrap()).unwrap();
    let t = start.elapsed();
    let pass = (b - 5.9).abs() <= 0.3 && t < Duration::from_secs(10);
    outcome(pass, format!("Ising kernel B {b:.4} (5.9 ± 0.3), runtime {} (< 10 s)", secs(t)))
}

fn table_column(r: &ExperimentResult, table: &str, column: &str) -> Vec<f64> {
    let t = r.find_table(table).unwrap();
    let k = t.columns.iter().position(|c| c == column).unwrap();
    t.rows
        .iter()
        .map(|row| row[k].to_string().parse::<f64>().unwrap())
        .collect()
}

fn criterion_3(fig4: &ExperimentResult) -> Outcome {
    let risk = table_column(fig4, "fig4", "risk");
    let b = table_column(fig4, "fig4", "B");
    let decreasing = risk.windows(2).all(|w| w[1] < w[0]);
    let increasing = b.windows(2).all(|w| w[1] > w[0]);
    let t = fig4.runtime;
    let pass = risk.len() == 10 && decreasing && increasing && b[0] <= 2.0 && t < Duration::from_secs(30);
    outcome(
        pass,
        format!(
            "N_Q=1..10: R {:.4} -> {:.4} strictly decreasing {decreasing}, B {:.4} -> {:.4} strictly increasing {increasing}, B(1) <= 2, runtime {} (< 30 s)",
            risk[0],
            risk[risk.len() - 1],
            b[0],
            b[b.len() - 1],
            secs(t)
        ),
    )
}

fn criterion_4(ising: &ExperimentResult) -> Outcome {
    let doc = ising.find_document("ising_B").unwrap();
    let groups = doc["classification"].as_array().unwrap();
    let training_errors: Vec<u64> = groups.iter().map(|g| g["training_errors"].as_u64().unwrap()).collect();
    let far_100 = groups
        .iter()
        .find(|g| g["shots"] == 100)
        .map(|g| g["test_error_far_from_critical"].as_f64().unwrap())
        .unwrap();
    let t = ising.runtime;
    let pass = training_errors.iter().all(|&e| e == 0) && far_100 < 0.02 && t < Duration::from_secs(300);
    outcome(
        pass,
        format!(
            "training errors over 1000 repetitions for S=1,10,100: {training_errors:?} (all 0), mean test error |h-1|>0.2 at S=100: {far_100:.4} (< 0.02), runtime {} (< 300 s)",
            secs(t)
        ),
    )
}

fn criterion_5(ib: &ExperimentResult) -> Outcome {
    let beta = table_column(ib, "ib_curve", "beta");
    let risk = table_column(ib, "ib_curve", "risk");
    let b = table_column(ib, "ib_curve", "B");
    let bayes = ib.find_document("ib_sweep").unwrap()["bayes_risk"].as_f64().unwrap();
    let last = beta.len() - 1;
    let trend = risk[last] < risk[0] && b[last] > b[0];
    let t = ib.runtime;
    let pass = (beta[0] - 1.0).abs() < 1e-12
        && (beta[last] - 3.0).abs() < 1e-12
        && risk[0] >= 0.4
        && b[0] <= 1.1
        && risk[last] <= bayes + 0.02
        && b[last] >= 1.8
        && trend
        && t < Duration::from_secs(120);
    outcome(
        pass,
        format!(
            "beta=1: R {:.4} (>= 0.4), B {:.4} (<= 1.1); beta=3: R {:.4} (<= {:.4}), B {:.4} (>= 1.8); trend {trend}; runtime {} (< 120 s)",
            risk[0],
            b[0],
            risk[last],
            bayes + 0.02,
            b[last],
            secs(t)
        ),
    )
}

fn criterion_6(moons_30: &ExperimentResult, moons_15: &ExperimentResult) -> Outcome {
    let e30 = moons_30.find_document("errors").unwrap();
    let e15 = moons_15.find_document("errors").unwrap();
    let f = |v: &Value, k: &str| v[k].as_f64().unwrap();
    let train = f(e30, "training_error");
    let test = f(e30, "test_error");
    let large = f(e30, "large_test_error");
    let infid = f(e15, "max_infidelity_within_class");
    let t = moons_30.runtime + moons_15.runtime;
    let pass = train == 0.0 && test <= 0.10 && large <= 0.06 && infid < 1e-4 && t < Duration::from_secs(600);
    outcome(
        pass,
        format!(
            "beta=30: training error {train:.4} (= 0), test error {test:.4} (<= 0.10), 10^4-point test error {large:.4} (<= 0.06); beta=1.5: max within-class infidelity {infid:.2e} (< 1e-4); runtime {} (< 600 s)",
            secs(t)
        ),
    )
}

/// Runs `check` on `INSTANCES` seeded instances and returns the number of violations.
fn suite(id: u64, check: impl Fn(&mut rand_chacha::ChaCha8Rng) -> bool) -> usize {
    (0..INSTANCES as u64)
        .filter(|&i| !check(&mut stream(2024, &[id, i])))
        .count()
}

fn random_mixed_table<R: Rng>(rng: &mut R, d: usize) -> EmbeddedEnsemble {
    let n = rng.random_range(2..=6);
    let ens = random_binary_ensemble(n, rng);
    let states = (0..n).map(|_| random_state(d, rng)).collect();
    EmbeddedEnsemble::from_states(&ens, states).unwrap()
}

fn sandwich<R: Rng>(rng: &mut R) -> bool {
    let d = [2, 4][rng.random_range(0..2)];
    let t = random_mixed_table(rng, d);
    let b = generalization_bound(&t).unwrap();
    let cap = 2f64.powf(t.ensemble().input_renyi_entropy(2.0).unwrap().min((d as f64).log2()));
    b >= 1.0 - 1e-8 && b <= cap + 1e-8
}

fn kernel_equivalence<R: Rng>(rng: &mut R) -> bool {
    let n = rng.random_range(2..=8);
    let d = [2, 3, 4, 8][rng.random_range(0..4)];
    let ens = random_binary_ensemble(n, rng);
    let states = (0..n).map(|_| random_pure(d, rng)).collect();
    let t = EmbeddedEnsemble::from_pure_states(&ens, states).unwrap();
    let direct = generalization_bound(&t).unwrap();
    let kernel = kernel_bound_b(&KernelMatrix::from_embedded(&t).unwrap()).unwrap();
    (direct - kernel).abs() <= 1e-8
}

fn approximation_range<R: Rng>(rng: &mut R) -> bool {
    let d = rng.random_range(2..=4);
    let t = random_mixed_table(rng, d);
    let a = approximation_error(&t).unwrap();
    let delta = bayes_delta(t.ensemble()).unwrap();
    a >= -1e-9 && a <= delta + 1e-9
}

fn fuchs_van_de_graaf<R: Rng>(rng: &mut R) -> bool {
    let d = rng.random_range(2..=4);
    let (a, b) = (random_state(d, rng), random_state(d, rng));
    let f = fidelity(&a, &b).unwrap();
    let td = 0.5 * trace_norm(&(a.matrix() - b.matrix())).unwrap();
    1.0 - f <= td + 1e-9 && td <= (1.0 - f * f).max(0.0).sqrt() + 1e-9
}

fn helstrom_below_information_bounds<R: Rng>(rng: &mut R) -> bool {
    let d = rng.random_range(2..=4);
    let t = random_mixed_table(rng, d);
    let r = optimal_risk(&t).unwrap();
    let (chernoff, entropic) = risk_info_bounds(&t).unwrap();
    r <= chernoff + 1e-9 && r <= entropic + 1e-9
}

fn operator_lemma<R: Rng>(rng: &mut R) -> bool {
    let d = rng.random_range(2..=4);
    let m = rng.random_range(1..=5);
    let mut p: Vec<f64> = (0..m).map(|_| rng.random::<f64>() + 1e-3).collect();
    let total: f64 = p.iter().sum();
    p.iter_mut().for_each(|w| *w /= total);
    let ops: Vec<CMatrix> = (0..m).map(|_| ginibre(d, d, rng)).collect();
    let lhs: f64 = ops.iter().zip(&p).map(|(a, w)| w * schatten_one_norm(a).unwrap()).sum();
    let mut s = CMatrix::zeros(d, d);
    for (a, w) in ops.iter().zip(&p) {
        s += (a * a.adjoint()).scale(*w);
    }
    let rhs = trace(&sqrtm_psd(&s).unwrap()).re;
    lhs <= rhs + 1e-9
}

fn data_processing<R: Rng>(rng: &mut R) -> bool {
    let n = rng.random_range(2..=6);
    let ens = random_binary_ensemble(n, rng);
    let pure: Vec<_> = (0..n).map(|_| random_pure(4, rng)).collect();
    let reduced = pure
        .iter()
        .map(|s| s.density().partial_trace(2, 2, Subsystem::Second).unwrap())
        .collect();
    let full = generalization_bound(&EmbeddedEnsemble::from_pure_states(&ens, pure).unwrap()).unwrap();
    let part = generalization_bound(&EmbeddedEnsemble::from_states(&ens, reduced).unwrap()).unwrap();
    part <= full + 1e-9
}

/// Returns `None` when the largest off-diagonal fidelity is not separated from the next.
fn pgm_slope<R: Rng>(rng: &mut R) -> Option<bool> {
    let ens = random_binary_ensemble(5, rng);
    let states = (0..5).map(|_| random_pure(3, rng)).collect();
    let t = EmbeddedEnsemble::from_pure_states(&ens, states).unwrap();
    let f = fidelity_matrix(&t).unwrap();
    let mut off: Vec<f64> = (0..5).flat_map(|i| (i + 1..5).map(move |j| (i, j))).map(|(i, j)| f[i][j]).collect();
    off.sort_by(|a, b| b.total_cmp(a));
    let (fmax, next) = (off[0], off[1]);
    if !(fmax > 0.1 && fmax < 1.0 - 1e-9 && next <= 0.9 * fmax) {
        return None;
    }
    let b200 = pgm_approx_bound_from_fidelities(&ens, &f, 200);
    let b201 = pgm_approx_bound_from_fidelities(&ens, &f, 201);
    let slope = (b201 / b200).ln();
    Some((slope - fmax.ln()).abs() <= 0.01 * fmax.ln().abs())
}

fn pgm_suite() -> (usize, usize) {
    let mut rng = stream(2024, &[8]);
    let (mut tried, mut failed) = (0, 0);
    while tried < INSTANCES {
        if let Some(ok) = pgm_slope(&mut rng) {
            tried += 1;
            failed += usize::from(!ok);
        }
    }
    (tried, failed)
}

fn criterion_7() -> Outcome {
    let results = [
        ("B sandwich", suite(1, sandwich)),
        ("kernel/direct B", suite(2, kernel_equivalence)),
        ("0 <= A <= Delta", suite(3, approximation_range)),
        ("Fuchs-van de Graaf", suite(4, fuchs_van_de_graaf)),
        ("Helstrom <= information bounds", suite(5, helstrom_below_information_bounds)),
        ("operator lemma", suite(6, operator_lemma)),
        ("data processing of I2", suite(7, data_processing)),
        ("PGM slope at N=200", pgm_suite().1),
    ];
    let failing: Vec<String> = results
        .iter()
        .filter(|(_, f)| *f > 0)
        .map(|(n, f)| format!("{n}: {f} violations"))
        .collect();
    let detail = if failing.is_empty() {
        format!("{} suites x {INSTANCES} instances, no violations", results.len())
    } else {
        failing.join("; ")
    };
    outcome(failing.is_empty(), detail)
}

fn criterion_8() -> Outcome {
    let grid = fibonacci_sphere(10_000);
    let mut worst_helstrom = f64::NEG_INFINITY;
    for i in 0..INSTANCES as u64 {
        let mut rng = stream(2025, &[1, i]);
        let (a, b) = (random_qubit(&mut rng), random_qubit(&mut rng));
        let p0 = rng.random_range(0.1..0.9);
        let h = helstrom_risk_weighted(&a, &b, p0, 1.0 - p0).unwrap();
        worst_helstrom = worst_helstrom.max(h - grid_risk(&a, &b, p0, &grid));
    }

    let pairs = [(0.3, 0.7), (0.5, 1.5), (1.2, 1.8), (0.9, 1.1), (0.2, 1.9), (0.6, 0.95), (1.05, 1.4)];
    let worst_ising = pairs
        .iter()
        .map(|&(h, hp)| (ising_overlap(h, hp, 4).unwrap() - ising_overlap_ed(h, hp, 4)).abs())
        .fold(0.0, f64::max);

    let mut worst_vqib = 0.0f64;
    for i in 0..100u64 {
        let mut rng = stream(2025, &[3, i]);
        let layers = rng.random_range(1..=4);
        let flat: Vec<f64> = (0..ReuploadingWeights::param_count(layers, 2))
            .map(|_| rng.random_range(-3.0..3.0))
            .collect();
        let w = ReuploadingWeights::from_flat(layers, 2, &flat).unwrap();
        let samples = two_moons(rng.random_range(2..=12), 0.3, i).unwrap();
        let beta = rng.random_range(0.0..40.0);
        let fast = vqib_loss(&w, &samples, 2, beta).unwrap();
        let ens = LabeledEnsemble::empirical(2, &samples).unwrap();
        let dense = EmbeddedEnsemble::from_states(
            &ens,
            ens.inputs()
                .iter()
                .map(|x| Embedding::reuploading(w.clone()).embed(x).unwrap())
                .collect(),
        )
        .unwrap();
        worst_vqib = worst_vqib.max((fast - ib_lagrangian(&dense, beta).unwrap()).abs());
    }

    let pass = worst_helstrom <= 1e-9 && worst_ising <= 1e-3 && worst_vqib <= 1e-9;
    outcome(
        pass,
        format!(
            "Helstrom minus best grid measurement {worst_helstrom:.2e} (<= 1e-9); Ising overlap vs L=4 diagonalization {worst_ising:.2e} (<= 1e-3); VQIB loss vs density-matrix Lagrangian {worst_vqib:.2e} (<= 1e-9)"
        ),
    )
}

fn same_bytes(a: &ExperimentResult, b: &ExperimentResult) -> bool {
    a.render(OutputFormat::Csv).unwrap() == b.render(OutputFormat::Csv).unwrap()
        && a.render(OutputFormat::Json).unwrap() == b.render(OutputFormat::Json).unwrap()
}

fn main() -> ExitCode {
    let opts = RunOptions { seed: 7, threads: 1 };
    let mut lines: Vec<(u32, &str, Outcome)> = Vec::new();
    let mut report = |id: u32, name: &'static str, o: Outcome| {
        println!("criterion {id} [{}] {name}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        lines.push((id, name, o));
    };

    report(1, "Bayes risk of the Gaussian ensemble", criterion_1());
    report(2, "Ising generalization bound", criterion_2());
    let fig4 = run_fig4(&Fig4Config::default(), &opts).unwrap();
    report(3, "angle-encoding sweep", criterion_3(&fig4));
    let ising = run_ising(&IsingConfig::default(), &opts).unwrap();
    report(4, "Ising phase classification", criterion_4(&ising));
    let ib = run_ib_sweep(&IbSweepConfig::default(), &opts).unwrap();
    report(5, "information-bottleneck sweep", criterion_5(&ib));
    let moons_30 = run_moons_vqib(&MoonsConfig::default(), &opts).unwrap();
    let moons_15 = run_moons_vqib(
        &MoonsConfig {
            beta: 1.5,
            ..Default::default()
        },
        &opts,
    )
    .unwrap();
    report(6, "two-moons variational bottleneck", criterion_6(&moons_30, &moons_15));
    report(7, "property suites", criterion_7());
    report(8, "oracle equivalences", criterion_8());

    let bounds = run_bounds(&BoundsConfig::default(), &opts).unwrap();
    let reruns = [
        ("bounds", same_bytes(&bounds, &run_bounds(&BoundsConfig::default(), &opts).unwrap())),
        ("fig4", same_bytes(&fig4, &run_fig4(&Fig4Config::default(), &opts).unwrap())),
        ("ising", same_bytes(&ising, &run_ising(&IsingConfig::default(), &opts).unwrap())),
        ("ib", same_bytes(&ib, &run_ib_sweep(&IbSweepConfig::default(), &opts).unwrap())),
        ("vqib", same_bytes(&moons_30, &run_moons_vqib(&MoonsConfig::default(), &opts).unwrap())),
    ];
    let differing: Vec<&str> = reruns.iter().filter(|(_, same)| !same).map(|(n, _)| *n).collect();
    report(
        9,
        "determinism",
        outcome(
            differing.is_empty(),
            if differing.is_empty() {
                "bounds, fig4, ising, ib, vqib outputs byte-identical on rerun (seed 7, 1 thread)".to_string()
            } else {
                format!("outputs differ on rerun: {differing:?}")
            },
        ),
    );

    let failed: Vec<u32> = lines.iter().filter(|(_, _, o)| !o.pass).map(|(id, _, _)| *id).collect();
    println!("acceptance: {} of {} criteria pass", lines.len() - failed.len(), lines.len());
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failing criteria {failed:?}");
        ExitCode::FAILURE
    }
}
