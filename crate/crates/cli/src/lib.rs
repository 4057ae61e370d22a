//! Command-line pipeline around `intcollab-core`: ingest citation-index
//! exports, count, build and cut networks, lay them out and write map and
//! network files. Every invocation writes `run-manifest.json` next to its
//! artifacts.

pub mod app;
pub mod artifacts;
pub mod config;
pub mod error;
pub mod manifest;
pub mod pipeline;

pub use app::run_cli;
pub use config::RunConfig;
pub use error::CliError;
