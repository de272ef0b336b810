//! Command-line front end for `m0n-core`: exact weight parsing, command
//! execution and deterministic JSON/CSV reports.

pub mod commands;
pub mod parse;
pub mod report;

pub use parse::{parse_weights, WeightError};
pub use report::{Format, Report};
