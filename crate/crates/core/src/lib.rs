//! Measures of partial balance for signed graphs.

pub mod axioms;
pub mod cycles;
pub mod experiment;
pub mod frustration;
pub mod graph;
pub mod ingestion;
pub mod report;
pub mod measure;
pub mod spectral;
pub mod stats;
pub mod synthetic;
pub mod trivial;

pub use graph::{Sign, SignedGraph, SwitchSet};
