use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;

use finbench_core::seed::sha256_hex;

use crate::error::CliError;

#[derive(Debug, Serialize)]
pub struct Artifact {
    pub path: PathBuf,
    pub sha256: String,
}

impl Artifact {
    pub fn of(path: &Path) -> Result<Artifact, CliError> {
        let bytes = std::fs::read(path).map_err(|e| CliError::input(path, e))?;
        Ok(Artifact {
            path: path.to_path_buf(),
            sha256: sha256_hex(&bytes),
        })
    }
}

/// Provenance of one command run, written next to its outputs.
#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub arguments: Vec<String>,
    pub seeds: Vec<u64>,
    pub inputs: Vec<Artifact>,
    pub outputs: Vec<Artifact>,
    pub tool_version: String,
    pub wall_clock_seconds: f64,
    #[serde(skip)]
    started: Option<Instant>,
}

impl RunManifest {
    pub fn start(command: &str) -> Self {
        RunManifest {
            command: command.to_string(),
            arguments: std::env::args().skip(1).collect(),
            seeds: Vec::new(),
            inputs: Vec::new(),
            outputs: Vec::new(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            wall_clock_seconds: 0.0,
            started: Some(Instant::now()),
        }
    }

    pub fn input(&mut self, path: &Path) -> Result<(), CliError> {
        self.inputs.push(Artifact::of(path)?);
        Ok(())
    }

    pub fn outputs<'a>(&mut self, paths: impl IntoIterator<Item = &'a PathBuf>) -> Result<(), CliError> {
        for p in paths {
            self.outputs.push(Artifact::of(p)?);
        }
        Ok(())
    }

    /// Write `manifest-<command>.json` under `out`.
    pub fn finish(mut self, out: &Path) -> Result<PathBuf, CliError> {
        self.wall_clock_seconds = self.started.map_or(0.0, |s| s.elapsed().as_secs_f64());
        let path = out.join(format!("manifest-{}.json", self.command));
        let text = serde_json::to_string_pretty(&self).expect("manifests serialize") + "\n";
        std::fs::write(&path, text).map_err(|e| CliError::output(&path, e))?;
        Ok(path)
    }
}
