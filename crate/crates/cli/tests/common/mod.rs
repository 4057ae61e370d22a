#![allow(dead_code)]

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

pub fn data_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data")
}

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden/run")
}

/// Fresh directory holding the bundled corpus and run configuration.
pub fn workspace() -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    for name in ["synthetic_corpus.txt", "run.toml"] {
        std::fs::copy(data_dir().join(name), dir.path().join(name)).unwrap();
    }
    dir
}

pub fn intcollab(cwd: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_intcollab"))
        .current_dir(cwd)
        .args(args)
        .output()
        .unwrap()
}

pub fn ok(cwd: &Path, args: &[&str]) {
    let out = intcollab(cwd, args);
    assert!(
        out.status.success(),
        "intcollab {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
}

/// File name to contents for every regular file directly inside `dir`.
pub fn tree(dir: &Path) -> BTreeMap<String, Vec<u8>> {
    let mut out = BTreeMap::new();
    for entry in std::fs::read_dir(dir).unwrap() {
        let entry = entry.unwrap();
        if entry.file_type().unwrap().is_file() {
            out.insert(
                entry.file_name().to_string_lossy().into_owned(),
                std::fs::read(entry.path()).unwrap(),
            );
        }
    }
    out
}

pub fn without_manifest(mut t: BTreeMap<String, Vec<u8>>) -> BTreeMap<String, Vec<u8>> {
    t.remove("run-manifest.json");
    t
}

/// Runs every stage subcommand in sequence into `out`.
pub fn staged(cwd: &Path, out: &str) {
    for stage in ["ingest", "summary", "net", "geo", "core", "ego", "export"] {
        ok(cwd, &[stage, "--config", "run.toml", "--out", out]);
    }
}
