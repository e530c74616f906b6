//! Serialization formats and the SMT-LIB exporter.

pub mod document;
pub mod smt;

pub use document::{parse_network, parse_pwa, pwa_to_json, NetworkDocument, PwaDocument};
pub use smt::export_smt;
