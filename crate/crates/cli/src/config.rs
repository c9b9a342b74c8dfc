//! Run configuration shared by every subcommand.

use std::path::PathBuf;

use qcd_core::{Error, Result};
use serde::Serialize;

/// Output format for reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    /// Versioned JSON document (`"schema": 1`).
    Json,
    /// Flat CSV table: `.` decimal, `,` separator, LF line endings.
    Csv,
}

/// Knobs common to every run. Collected once from the global flags and
/// validated before any work starts.
#[derive(Debug, Clone)]
pub struct RunConfig {
    /// Truncation size of the model operators.
    pub n: usize,
    /// Highest jet order.
    pub k: usize,
    /// Headline tolerance (kernel thresholds and congruence decisions).
    pub tol: f64,
    /// Seed for every pseudo-random fixture.
    pub seed: u64,
    /// Report format.
    pub format: OutputFormat,
    /// Output file (stdout when absent).
    pub out: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            n: 64,
            k: 8,
            tol: 1e-8,
            seed: 7,
            format: OutputFormat::Json,
            out: None,
        }
    }
}

impl RunConfig {
    /// Checks the config invariants: the truncation must leave room for the
    /// jet tower (`N ≥ 4K`) and the tolerance must be positive.
    pub fn validate(&self) -> Result<()> {
        if self.n < 4 * self.k {
            return Err(Error::InvalidConfig(format!(
                "truncation n = {} is below the guard n >= 4k = {}",
                self.n,
                4 * self.k
            )));
        }
        if self.tol <= 0.0 || self.tol.is_nan() {
            return Err(Error::InvalidConfig(format!(
                "tolerance must be positive, got {}",
                self.tol
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_config_is_valid() {
        assert!(RunConfig::default().validate().is_ok());
    }

    #[test]
    fn truncation_guard_rejects_small_n() {
        let cfg = RunConfig {
            n: 4,
            ..RunConfig::default()
        };
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn tolerance_must_be_positive() {
        let cfg = RunConfig {
            tol: 0.0,
            ..RunConfig::default()
        };
        assert!(cfg.validate().is_err());
        let cfg = RunConfig {
            tol: -1.0,
            ..RunConfig::default()
        };
        assert!(cfg.validate().is_err());
    }
}
