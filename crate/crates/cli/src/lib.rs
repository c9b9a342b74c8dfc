//! Command-line front end for the quaternionic operator toolkit.
//!
//! Every subcommand is a thin orchestration layer: flags are parsed into a
//! [`config::RunConfig`] plus operator/point specs, the corresponding
//! library routines run, and the result is serialized as versioned JSON or
//! flat CSV. The [`suite`] module bundles the end-to-end verification
//! criteria behind the `suite` subcommand.

pub mod commands;
pub mod config;
pub mod input;
pub mod report;
pub mod suite;

pub use config::{OutputFormat, RunConfig};
