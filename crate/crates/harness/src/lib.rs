//! Reproducible verification experiments for the Laguerre harmonic-analysis
//! library: configuration, seeded sampling, the acceptance battery, and the
//! CSV-producing commands behind the CLI.

pub mod commands;
pub mod config;
pub mod criteria;
pub mod report;
pub mod sampling;
