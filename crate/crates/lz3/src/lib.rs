//! Command-line driver for three-level Landau–Zener simulations.
//!
//! Each subcommand is a function from a parsed configuration to output text,
//! so the binary is a thin wrapper and everything is testable in-process.

pub mod commands;
pub mod config;
pub mod csv;
pub mod error;
pub mod figures;
pub mod spectrum;
pub mod sweep;

pub use error::{CliError, CliResult};
