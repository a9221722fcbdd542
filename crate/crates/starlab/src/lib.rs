//! Command-line verification suites and file formats for `starlab-core`.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod json;
pub mod render;
pub mod suites;

pub use error::{CliError, CliResult};
