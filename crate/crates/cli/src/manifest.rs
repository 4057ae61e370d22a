use std::collections::BTreeMap;
use std::path::Path;

use serde::Serialize;

use crate::artifacts::{sha256_hex, Artifacts};
use crate::config::RunConfig;
use crate::error::CliError;

#[derive(Debug, Serialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

/// What produced a directory's artifacts: command, resolved configuration and
/// content digests of inputs and outputs. No timestamps, so identical runs
/// give identical manifests.
#[derive(Debug, Serialize)]
pub struct RunManifest<'a> {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'a str,
    pub config: &'a RunConfig,
    pub inputs: Vec<InputDigest>,
    pub artifacts: BTreeMap<String, String>,
}

pub fn digest_file(path: &Path) -> Result<InputDigest, CliError> {
    let bytes = std::fs::read(path).map_err(|e| CliError::io(path, e))?;
    Ok(InputDigest {
        path: path.display().to_string(),
        sha256: sha256_hex(&bytes),
    })
}

impl<'a> RunManifest<'a> {
    pub fn new(command: &'a str, config: &'a RunConfig, inputs: Vec<InputDigest>, artifacts: &Artifacts) -> Self {
        RunManifest {
            tool: "intcollab",
            version: env!("CARGO_PKG_VERSION"),
            command,
            config,
            inputs,
            artifacts: artifacts.digests(),
        }
    }
}
