//! Command-line front end for the qembed experiments.

pub mod args;
pub mod config;
pub mod error;
pub mod report;

use std::ffi::OsString;
use std::path::PathBuf;
use std::time::Instant;

use clap::{CommandFactory, Parser};

pub use args::Cli;
pub use config::{Command, Experiment, ResolvedRun, RunConfig};
pub use error::CliError;
pub use report::{emit_report, FileEntry, Manifest};

/// Resolves defaults, the `--config` file and flags, in that order of precedence.
pub fn resolve(cli: &Cli) -> Result<ResolvedRun, CliError> {
    let sub = &cli.command;
    let command = sub.command();
    let common = sub.common();
    let file = match &common.config {
        Some(path) => RunConfig::read(path)?,
        None => RunConfig::default(),
    };
    if let Some(c) = file.command {
        if c != command {
            return Err(CliError::Usage(format!(
                "config is for command '{}', not '{}'",
                c.name(),
                command.name()
            )));
        }
    }
    let mut experiment = Experiment::from_params(command, &file.params)?;
    sub.apply(&mut experiment);
    experiment.validate().map_err(CliError::Invalid)?;
    let threads = common.threads.or(file.threads).unwrap_or(1);
    if threads == 0 {
        return Err(CliError::Usage("--threads must be at least 1".into()));
    }
    Ok(ResolvedRun {
        experiment,
        seed: common.seed.or(file.seed).unwrap_or(0),
        format: common.format.map(Into::into).or(file.format).unwrap_or_default(),
        threads,
        output_dir: common
            .out
            .clone()
            .or(file.output_dir)
            .unwrap_or_else(|| PathBuf::from("out").join(command.name())),
    })
}

/// Runs an experiment and writes its outputs and manifest.
pub fn execute(run: &ResolvedRun) -> Result<Manifest, CliError> {
    let start = Instant::now();
    let result = run.experiment.run(&run.options()).map_err(CliError::Run)?;
    let manifest = emit_report(&result, &run.reproducible_config(), run.format, &run.output_dir)?;
    eprintln!(
        "qembed: {}: {} data file(s) and {} in {:.2} s",
        run.output_dir.display(),
        manifest.files.len(),
        report::MANIFEST,
        start.elapsed().as_secs_f64()
    );
    Ok(manifest)
}

/// Parses `argv`, runs the command and returns the process exit code.
///
/// 0 on success, 2 for invalid arguments or configuration, 1 for failures while running or
/// writing outputs.
pub fn parse_and_dispatch<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match resolve(&cli).and_then(|run| execute(&run)) {
        Ok(_) => 0,
        Err(e) => {
            eprintln!("qembed: error: {}", single_line(&e));
            if e.exit_code() == 2 {
                eprintln!("\n{}", Cli::command().render_usage());
            }
            i32::from(e.exit_code())
        }
    }
}

fn single_line(e: &CliError) -> String {
    let mut msg = e.to_string();
    let mut source = std::error::Error::source(e);
    while let Some(s) = source {
        let part = s.to_string();
        if !msg.contains(&part) {
            msg = format!("{msg}: {part}");
        }
        source = s.source();
    }
    msg.replace('\n', " ")
}
