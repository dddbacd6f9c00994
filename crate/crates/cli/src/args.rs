use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qembed_core::experiments::OutputFormat;
use qembed_core::ib::IbMode;

use crate::config::{Command, Experiment};

/// Generalization bounds, risk estimates and information-bottleneck embeddings for quantum
/// classifiers.
///
/// Settings are resolved as built-in defaults, then the `--config` file, then flags.
#[derive(Debug, Parser)]
#[command(name = "qembed", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Subcommands,
}

#[derive(Debug, Args)]
pub struct Common {
    /// JSON run configuration: {command, seed, output_dir, format, threads, params}.
    #[arg(long, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// Master seed of every random stream [default: 0].
    #[arg(long)]
    pub seed: Option<u64>,
    /// Output directory [default: out/<command>].
    #[arg(long, value_name = "DIR")]
    pub out: Option<PathBuf>,
    /// Format of tables; documents are always JSON [default: csv].
    #[arg(long, value_enum)]
    pub format: Option<FormatArg>,
    /// Worker threads. Results do not depend on it [default: 1].
    #[arg(long)]
    pub threads: Option<usize>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FormatArg {
    Csv,
    Json,
}

impl From<FormatArg> for OutputFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Csv => OutputFormat::Csv,
            FormatArg::Json => OutputFormat::Json,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ModeArg {
    Mixed,
    Pure,
}

#[derive(Debug, Subcommand)]
pub enum Subcommands {
    /// Risk, Bayes risk and generalization bounds of the angle encoding on two Gaussians.
    Bounds {
        #[command(flatten)]
        common: Common,
        /// Number of encoded copies N_Q.
        #[arg(long)]
        copies: Option<usize>,
        /// Depolarizing strength.
        #[arg(long)]
        epsilon: Option<f64>,
        /// Points of the input grid.
        #[arg(long)]
        grid: Option<usize>,
        /// Training-set size T of the generalization budget.
        #[arg(long)]
        training_size: Option<usize>,
    },
    /// Information-bottleneck sweep over β on two Gaussians.
    Ib {
        #[command(flatten)]
        common: Common,
        /// Single β; shorthand for --beta-min β --beta-max β --beta-points 1.
        #[arg(long, conflicts_with_all = ["beta_min", "beta_max", "beta_points"])]
        beta: Option<f64>,
        /// Smallest β of the sweep.
        #[arg(long)]
        beta_min: Option<f64>,
        /// Largest β of the sweep.
        #[arg(long)]
        beta_max: Option<f64>,
        /// Evenly spaced β values.
        #[arg(long)]
        beta_points: Option<usize>,
        /// Fixed-point iterations per β.
        #[arg(long)]
        iterations: Option<usize>,
        /// Mixed or pure single-qubit embeddings.
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
        /// Points of the input grid.
        #[arg(long)]
        grid: Option<usize>,
    },
    /// Variational bottleneck on the two-moons data with a data-reuploading qubit.
    Vqib {
        #[command(flatten)]
        common: Common,
        /// Trade-off β of the bottleneck loss.
        #[arg(long)]
        beta: Option<f64>,
        /// Reuploading layers.
        #[arg(long)]
        layers: Option<usize>,
        /// Training points per class.
        #[arg(long)]
        train_per_class: Option<usize>,
        /// Test points per class.
        #[arg(long)]
        test_per_class: Option<usize>,
        /// Per-class size of the large test set; 0 skips it.
        #[arg(long)]
        large_test_per_class: Option<usize>,
        /// Standard deviation of the Gaussian noise on the moons.
        #[arg(long)]
        noise: Option<f64>,
        /// Objective evaluations per simplex run.
        #[arg(long)]
        max_evals: Option<usize>,
    },
    /// Ising ground-state kernel bound and SWAP-test phase classification.
    Ising {
        #[command(flatten)]
        common: Common,
        /// Chain length (even).
        #[arg(long = "L", value_name = "L")]
        l: Option<usize>,
        /// Field grid of the kernel bound.
        #[arg(long)]
        grid: Option<usize>,
        /// Shot counts, comma separated.
        #[arg(long, value_delimiter = ',')]
        shots: Option<Vec<usize>>,
        /// Training fields drawn per phase.
        #[arg(long)]
        train_per_phase: Option<usize>,
        /// Independent repetitions per shot count.
        #[arg(long)]
        repetitions: Option<usize>,
        /// Evenly spaced test fields.
        #[arg(long)]
        test_points: Option<usize>,
    },
    /// Risk and bound of the N_Q-copy angle encoding for N_Q in a range.
    Fig4 {
        #[command(flatten)]
        common: Common,
        /// Smallest number of copies.
        #[arg(long)]
        nq_min: Option<usize>,
        /// Largest number of copies (at most 10).
        #[arg(long)]
        nq_max: Option<usize>,
        /// Points of the input grid.
        #[arg(long)]
        grid: Option<usize>,
    },
}

fn set<T>(slot: &mut T, value: Option<T>) {
    if let Some(v) = value {
        *slot = v;
    }
}

impl Subcommands {
    pub fn command(&self) -> Command {
        match self {
            Subcommands::Bounds { .. } => Command::Bounds,
            Subcommands::Ib { .. } => Command::Ib,
            Subcommands::Vqib { .. } => Command::Vqib,
            Subcommands::Ising { .. } => Command::Ising,
            Subcommands::Fig4 { .. } => Command::Fig4,
        }
    }

    pub fn common(&self) -> &Common {
        match self {
            Subcommands::Bounds { common, .. }
            | Subcommands::Ib { common, .. }
            | Subcommands::Vqib { common, .. }
            | Subcommands::Ising { common, .. }
            | Subcommands::Fig4 { common, .. } => common,
        }
    }

    /// Overrides experiment settings with the flags given on the command line.
    pub fn apply(&self, experiment: &mut Experiment) {
        match (self, experiment) {
            (
                Subcommands::Bounds {
                    copies,
                    epsilon,
                    grid,
                    training_size,
                    ..
                },
                Experiment::Bounds(c),
            ) => {
                set(&mut c.copies, *copies);
                set(&mut c.epsilon, *epsilon);
                set(&mut c.gaussian.grid, *grid);
                set(&mut c.training_size, *training_size);
            }
            (
                Subcommands::Ib {
                    beta,
                    beta_min,
                    beta_max,
                    beta_points,
                    iterations,
                    mode,
                    grid,
                    ..
                },
                Experiment::Ib(c),
            ) => {
                if let Some(b) = beta {
                    c.beta_min = *b;
                    c.beta_max = *b;
                    c.beta_points = 1;
                }
                set(&mut c.beta_min, *beta_min);
                set(&mut c.beta_max, *beta_max);
                set(&mut c.beta_points, *beta_points);
                set(&mut c.iterations, *iterations);
                set(
                    &mut c.mode,
                    mode.map(|m| match m {
                        ModeArg::Mixed => IbMode::Mixed,
                        ModeArg::Pure => IbMode::Pure,
                    }),
                );
                set(&mut c.gaussian.grid, *grid);
            }
            (
                Subcommands::Vqib {
                    beta,
                    layers,
                    train_per_class,
                    test_per_class,
                    large_test_per_class,
                    noise,
                    max_evals,
                    ..
                },
                Experiment::Vqib(c),
            ) => {
                set(&mut c.beta, *beta);
                set(&mut c.layers, *layers);
                set(&mut c.train_per_class, *train_per_class);
                set(&mut c.test_per_class, *test_per_class);
                set(&mut c.large_test_per_class, *large_test_per_class);
                set(&mut c.noise, *noise);
                set(&mut c.training.optimizer.max_evals, *max_evals);
            }
            (
                Subcommands::Ising {
                    l,
                    grid,
                    shots,
                    train_per_phase,
                    repetitions,
                    test_points,
                    ..
                },
                Experiment::Ising(c),
            ) => {
                set(&mut c.l, *l);
                set(&mut c.grid, *grid);
                set(&mut c.shots, shots.clone());
                set(&mut c.train_per_phase, *train_per_phase);
                set(&mut c.repetitions, *repetitions);
                set(&mut c.test_points, *test_points);
            }
            (Subcommands::Fig4 { nq_min, nq_max, grid, .. }, Experiment::Fig4(c)) => {
                set(&mut c.nq_min, *nq_min);
                set(&mut c.nq_max, *nq_max);
                set(&mut c.gaussian.grid, *grid);
            }
            _ => unreachable!("experiment built from the same subcommand"),
        }
    }
}
