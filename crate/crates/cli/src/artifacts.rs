//! In-memory artifact set, written out all at once through a staging
//! directory so a failed run leaves nothing half-written behind.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::CliError;

pub const MANIFEST: &str = "run-manifest.json";

#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct Artifacts {
    files: BTreeMap<String, Vec<u8>>,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub fn pretty_json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("artifact serializes");
    s.push('\n');
    s
}

impl Artifacts {
    pub fn add(&mut self, name: &str, content: impl Into<Vec<u8>>) {
        self.files.insert(name.to_string(), content.into());
    }

    pub fn add_json<T: Serialize + ?Sized>(&mut self, name: &str, value: &T) {
        self.add(name, pretty_json(value));
    }

    pub fn get(&self, name: &str) -> Option<&[u8]> {
        self.files.get(name).map(Vec::as_slice)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.files.keys().map(String::as_str)
    }

    pub fn digests(&self) -> BTreeMap<String, String> {
        self.files
            .iter()
            .map(|(name, bytes)| (name.clone(), sha256_hex(bytes)))
            .collect()
    }

    /// Writes every file into a sibling staging directory, then moves them
    /// into `out_dir`. On error the staging directory is removed.
    pub fn commit(&self, out_dir: &Path) -> Result<(), CliError> {
        fs::create_dir_all(out_dir).map_err(|e| CliError::io(out_dir, e))?;
        let staging = tempfile::Builder::new()
            .prefix(".intcollab-staging-")
            .tempdir_in(out_dir)
            .map_err(|e| CliError::io(out_dir, e))?;
        for (name, bytes) in &self.files {
            let path = staging.path().join(name);
            fs::write(&path, bytes).map_err(|e| CliError::io(&path, e))?;
        }
        for name in self.files.keys() {
            let target: PathBuf = out_dir.join(name);
            fs::rename(staging.path().join(name), &target).map_err(|e| CliError::io(&target, e))?;
        }
        staging.close().map_err(|e| CliError::io(out_dir, e))
    }
}
