//! Country-level co-authorship analytics.
//!
//! The pipeline runs from tagged bibliographic records to country networks:
//! [`corpus`] parses and filters records, [`counting`] builds the
//! document-by-country incidence matrix and its integer and fractional
//! counts, [`network`] derives the co-authorship graph, cosine similarities,
//! thresholds, cores and ego networks, [`layout`] places nodes by stress
//! minimization and [`export`] writes map and network files.

pub mod corpus;
pub mod counting;
pub mod error;
pub mod export;
pub mod layout;
pub mod network;
pub mod numeric;
pub mod synth;

pub use error::{Error, Result};
