use std::fs;
use std::path::Path;

use qembed_core::experiments::{pretty, ExperimentResult, OutputFormat};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::config::RunConfig;
use crate::error::CliError;

pub const MANIFEST: &str = "manifest.json";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FileEntry {
    pub name: String,
    pub bytes: usize,
    pub sha256: String,
}

/// Index of a run's output directory.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub command: String,
    pub seed: u64,
    /// SHA-256 of the compact JSON of `config`.
    pub config_sha256: String,
    /// Configuration that reproduces the run when passed to `--config`.
    pub config: RunConfig,
    pub files: Vec<FileEntry>,
}

fn sha256_hex(bytes: &[u8]) -> String {
    format!("{:x}", Sha256::digest(bytes))
}

fn write(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    fs::write(path, bytes).map_err(|source| CliError::Write {
        path: path.to_owned(),
        source,
    })
}

/// Writes every table and document of `result` into `dir` followed by `manifest.json`.
pub fn emit_report(
    result: &ExperimentResult,
    config: &RunConfig,
    format: OutputFormat,
    dir: &Path,
) -> Result<Manifest, CliError> {
    let files = result.render(format).map_err(CliError::Run)?;
    fs::create_dir_all(dir).map_err(|source| CliError::Write {
        path: dir.to_owned(),
        source,
    })?;
    let mut entries = Vec::with_capacity(files.len());
    for (name, bytes) in &files {
        write(&dir.join(name), bytes)?;
        entries.push(FileEntry {
            name: name.clone(),
            bytes: bytes.len(),
            sha256: sha256_hex(bytes),
        });
    }
    let canonical = serde_json::to_vec(config).expect("run configs serialize");
    let manifest = Manifest {
        command: result.name.clone(),
        seed: result.seed,
        config_sha256: sha256_hex(&canonical),
        config: config.clone(),
        files: entries,
    };
    let value = serde_json::to_value(&manifest).expect("manifests serialize");
    write(&dir.join(MANIFEST), &pretty(&value).map_err(CliError::Run)?)?;
    Ok(manifest)
}

#[cfg(test)]
mod tests {
    use super::*;
    use qembed_core::experiments::Table;

    #[test]
    fn empty_result_writes_only_the_manifest() {
        let dir = tempfile::tempdir().unwrap();
        let result = ExperimentResult::new("bounds", 3, &serde_json::json!({})).unwrap();
        let m = emit_report(&result, &RunConfig::default(), OutputFormat::Csv, dir.path()).unwrap();
        assert!(m.files.is_empty());
        let names: Vec<_> = fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().file_name()).collect();
        assert_eq!(names, [MANIFEST]);
    }

    #[test]
    fn manifest_hashes_match_written_files() {
        let dir = tempfile::tempdir().unwrap();
        let mut result = ExperimentResult::new("fig4", 0, &serde_json::json!({})).unwrap();
        let mut t = Table::new("t", &["a"]);
        t.push(vec![1.5.into()]);
        result.tables.push(t);
        let m = emit_report(&result, &RunConfig::default(), OutputFormat::Csv, dir.path()).unwrap();
        let bytes = fs::read(dir.path().join("t.csv")).unwrap();
        assert_eq!(m.files[0].sha256, sha256_hex(&bytes));
        assert_eq!(m.files[0].bytes, bytes.len());
    }

    #[test]
    fn non_finite_values_fail_before_writing() {
        let dir = tempfile::tempdir().unwrap();
        let mut result = ExperimentResult::new("fig4", 0, &serde_json::json!({})).unwrap();
        let mut t = Table::new("t", &["a"]);
        t.push(vec![f64::NAN.into()]);
        result.tables.push(t);
        let err = emit_report(&result, &RunConfig::default(), OutputFormat::Csv, dir.path()).unwrap_err();
        assert_eq!(err.exit_code(), 1);
        assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 0);
    }
}
