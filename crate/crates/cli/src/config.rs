use std::fs;
use std::path::{Path, PathBuf};

use qembed_core::experiments::{
    run_bounds, run_fig4, run_ib_sweep, run_ising, run_moons_vqib, BoundsConfig, ExperimentResult, Fig4Config,
    IbSweepConfig, IsingConfig, MoonsConfig, OutputFormat, RunOptions,
};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Bounds,
    Ib,
    Vqib,
    Ising,
    Fig4,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Bounds => "bounds",
            Command::Ib => "ib",
            Command::Vqib => "vqib",
            Command::Ising => "ising",
            Command::Fig4 => "fig4",
        }
    }
}

/// Run configuration as read from a `--config` file.
///
/// Every field except `command` is optional; `params` holds the experiment settings.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub command: Option<Command>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output_dir: Option<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub format: Option<OutputFormat>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub threads: Option<usize>,
    #[serde(default)]
    pub params: Map<String, Value>,
}

impl RunConfig {
    pub fn read(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path).map_err(|source| CliError::ConfigRead {
            path: path.to_owned(),
            source,
        })?;
        serde_json::from_str(&text).map_err(|source| CliError::ConfigParse {
            path: path.to_owned(),
            source,
        })
    }
}

/// Typed settings of one experiment.
#[derive(Debug, Clone, PartialEq)]
pub enum Experiment {
    Bounds(BoundsConfig),
    Ib(IbSweepConfig),
    Vqib(MoonsConfig),
    Ising(IsingConfig),
    Fig4(Fig4Config),
}

fn typed<T: DeserializeOwned>(command: Command, params: &Map<String, Value>) -> Result<T, CliError> {
    serde_json::from_value(Value::Object(params.clone())).map_err(|source| CliError::Params {
        command: command.name(),
        source,
    })
}

impl Experiment {
    /// Built-in defaults overlaid with `params`.
    pub fn from_params(command: Command, params: &Map<String, Value>) -> Result<Self, CliError> {
        Ok(match command {
            Command::Bounds => Experiment::Bounds(typed(command, params)?),
            Command::Ib => Experiment::Ib(typed(command, params)?),
            Command::Vqib => Experiment::Vqib(typed(command, params)?),
            Command::Ising => Experiment::Ising(typed(command, params)?),
            Command::Fig4 => Experiment::Fig4(typed(command, params)?),
        })
    }

    pub fn command(&self) -> Command {
        match self {
            Experiment::Bounds(_) => Command::Bounds,
            Experiment::Ib(_) => Command::Ib,
            Experiment::Vqib(_) => Command::Vqib,
            Experiment::Ising(_) => Command::Ising,
            Experiment::Fig4(_) => Command::Fig4,
        }
    }

    pub fn validate(&self) -> qembed_core::Result<()> {
        match self {
            Experiment::Bounds(c) => c.validate(),
            Experiment::Ib(c) => c.validate(),
            Experiment::Vqib(c) => c.validate(),
            Experiment::Ising(c) => c.validate(),
            Experiment::Fig4(c) => c.validate(),
        }
    }

    /// Fully resolved settings as a JSON object.
    pub fn params(&self) -> Map<String, Value> {
        let v = match self {
            Experiment::Bounds(c) => serde_json::to_value(c),
            Experiment::Ib(c) => serde_json::to_value(c),
            Experiment::Vqib(c) => serde_json::to_value(c),
            Experiment::Ising(c) => serde_json::to_value(c),
            Experiment::Fig4(c) => serde_json::to_value(c),
        };
        match v {
            Ok(Value::Object(m)) => m,
            _ => unreachable!("experiment configs serialize to objects"),
        }
    }

    pub fn run(&self, opts: &RunOptions) -> qembed_core::Result<ExperimentResult> {
        match self {
            Experiment::Bounds(c) => run_bounds(c, opts),
            Experiment::Ib(c) => run_ib_sweep(c, opts),
            Experiment::Vqib(c) => run_moons_vqib(c, opts),
            Experiment::Ising(c) => run_ising(c, opts),
            Experiment::Fig4(c) => run_fig4(c, opts),
        }
    }
}

/// A run with every setting decided.
#[derive(Debug, Clone, PartialEq)]
pub struct ResolvedRun {
    pub experiment: Experiment,
    pub seed: u64,
    pub format: OutputFormat,
    pub threads: usize,
    pub output_dir: PathBuf,
}

impl ResolvedRun {
    pub fn options(&self) -> RunOptions {
        RunOptions {
            seed: self.seed,
            threads: self.threads,
        }
    }

    /// The configuration that reproduces this run, without the output directory.
    pub fn reproducible_config(&self) -> RunConfig {
        RunConfig {
            command: Some(self.experiment.command()),
            seed: Some(self.seed),
            output_dir: None,
            format: Some(self.format),
            threads: Some(self.threads),
            params: self.experiment.params(),
        }
    }
}
