//! `qcd` — numerics for right-linear operators on quaternionic Hilbert
//! space: S-spectrum probes, weighted shifts, jet frames, rigidity,
//! canonical local matrices and bundle curvature.
//!
//! Exit codes: 0 success, 1 failed verdict in suite mode, 2 usage or
//! configuration error, 3 numerical breakdown. Set `QCD_LOG=info` (or
//! `debug`) for progress logging on stderr.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use qcd_cli::commands::{self, OperatorSpec};
use qcd_cli::config::{OutputFormat, RunConfig};
use qcd_cli::input::{parse_complex, parse_quaternion, parse_weight_rule};
use qcd_cli::report::CsvReport;
use qcd_cli::suite;
use qcd_core::Quaternion;
use serde::Serialize;

#[derive(Parser)]
#[command(name = "qcd", version, about, long_about = None)]
struct Cli {
    /// Truncation size of the model operators.
    #[arg(long, global = true, default_value_t = 64)]
    n: usize,

    /// Highest jet order.
    #[arg(long, global = true, default_value_t = 8)]
    k: usize,

    /// Headline tolerance (kernel thresholds and congruence decisions).
    #[arg(long, global = true, default_value_t = 1e-8)]
    tol: f64,

    /// Seed for every pseudo-random fixture.
    #[arg(long, global = true, default_value_t = 7)]
    seed: u64,

    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,

    /// Output file (stdout when omitted).
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Point-spectrum membership of probed spheres at one truncation.
    Spectrum {
        /// Weight rule: const:<q>, ratio or custom:<file.json>.
        #[arg(long, default_value = "const:1")]
        weights: String,
        /// Diagonal entry (1, 2 or 4 comma-separated reals).
        /// Constant diagonal added to the shift (quaternion components).
        #[arg(long, default_value = "0,1")]
        diag: String,
        /// Probed sphere representative (repeatable).
        #[arg(long = "point", required = true)]
        points: Vec<String>,
    },

    /// Root-product radius sequence and a kernel-dimension probe.
    Shift {
        /// Weight rule: const:<q>, ratio or custom:<file.json>.
        #[arg(long, default_value = "const:1")]
        weights: String,
        /// Length of the root-product sequence.
        #[arg(long, default_value_t = 1000)]
        n_max: usize,
        /// Probe sphere (repeatable); defaults to half the estimated radius
        /// on the imaginary axis.
        #[arg(long = "probe")]
        probes: Vec<String>,
    },

    /// Jet frame at a base point: rank, identity residuals, Gram tensor.
    Frame {
        #[arg(long, default_value = "const:1")]
        weights: String,
        /// Constant diagonal added to the shift (quaternion components).
        #[arg(long, default_value = "0,1")]
        diag: String,
        /// Base point in the upper half-plane (re,im).
        #[arg(long, default_value = "0,1")]
        base: String,
    },

    /// Transport round-trip: push the frame through a seeded random unitary
    /// and recover it from the Gram data.
    Rigidity {
        #[arg(long, default_value = "const:1")]
        weights: String,
        /// Constant diagonal added to the shift (quaternion components).
        #[arg(long, default_value = "0,1")]
        diag: String,
        #[arg(long, default_value = "0,1")]
        base: String,
    },

    /// Canonical local matrix in the orthonormalized jet basis.
    Canonical {
        #[arg(long, default_value = "const:1")]
        weights: String,
        /// Constant diagonal added to the shift (quaternion components).
        #[arg(long, default_value = "0,1")]
        diag: String,
        #[arg(long, default_value = "0,1")]
        base: String,
    },

    /// Curvature of the jet line bundle on a disk grid around the base.
    Curvature {
        #[arg(long, default_value = "const:1")]
        weights: String,
        /// Constant diagonal added to the shift (quaternion components).
        #[arg(long, default_value = "0,1")]
        diag: String,
        #[arg(long, default_value = "0,1")]
        base: String,
        /// Grid radius around the base point.
        #[arg(long, default_value_t = 0.15)]
        radius: f64,
        /// Grid steps per side.
        #[arg(long, default_value_t = 11)]
        steps: usize,
        /// Finite-difference step.
        #[arg(long, default_value_t = 1e-3)]
        h: f64,
    },

    /// Local unitary equivalence of two operators at a base point.
    Equiv {
        #[arg(long, default_value = "const:1")]
        weights: String,
        /// Constant diagonal added to the shift (quaternion components).
        #[arg(long, default_value = "0,1")]
        diag: String,
        #[arg(long, default_value = "const:1")]
        right_weights: String,
        #[arg(long, default_value = "0,1")]
        right_diag: String,
        #[arg(long, default_value = "0,1")]
        base: String,
    },

    /// Reproduce a built-in worked example.
    Example {
        #[arg(value_enum)]
        name: ExampleName,
    },

    /// Run the verification suite (exit 1 on any failed criterion).
    Suite,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ExampleName {
    /// Kernel-dimension table of the translated shift across its regions.
    Tci,
    /// The twisted pair: equal curvature, inequivalent canonical matrices.
    Cndu,
}

fn operator_spec(weights: &str, diag: &str) -> anyhow::Result<OperatorSpec> {
    Ok(OperatorSpec {
        weights: parse_weight_rule(weights)?,
        diag: parse_quaternion(diag)?,
    })
}

fn parse_points(points: &[String]) -> anyhow::Result<Vec<Quaternion>> {
    points
        .iter()
        .map(|p| parse_quaternion(p).map_err(anyhow::Error::from))
        .collect()
}

fn emit<R: Serialize + CsvReport>(report: &R, cfg: &RunConfig) -> anyhow::Result<()> {
    let text = match cfg.format {
        OutputFormat::Json => {
            let mut json = serde_json::to_string_pretty(report)?;
            json.push('\n');
            json
        }
        OutputFormat::Csv => report.to_csv(),
    };
    match &cfg.out {
        Some(path) => fs::write(path, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    let cfg = RunConfig {
        n: cli.n,
        k: cli.k,
        tol: cli.tol,
        seed: cli.seed,
        format: cli.format,
        out: cli.out.clone(),
    };
    cfg.validate()?;
    log::info!(
        "config: n = {}, k = {}, tol = {:e}, seed = {}",
        cfg.n,
        cfg.k,
        cfg.tol,
        cfg.seed
    );

    match &cli.command {
        Command::Spectrum {
            weights,
            diag,
            points,
        } => {
            let spec = operator_spec(weights, diag)?;
            let report = commands::spectrum(&cfg, &spec, &parse_points(points)?)?;
            emit(&report, &cfg)?;
        }
        Command::Shift {
            weights,
            n_max,
            probes,
        } => {
            let rule = parse_weight_rule(weights)?;
            let report = commands::shift(&cfg, rule, weights, *n_max, &parse_points(probes)?)?;
            emit(&report, &cfg)?;
        }
        Command::Frame {
            weights,
            diag,
            base,
        } => {
            let spec = operator_spec(weights, diag)?;
            let report = commands::frame(&cfg, &spec, parse_complex(base)?)?;
            emit(&report, &cfg)?;
        }
        Command::Rigidity {
            weights,
            diag,
            base,
        } => {
            let spec = operator_spec(weights, diag)?;
            let report = commands::rigidity(&cfg, &spec, parse_complex(base)?)?;
            emit(&report, &cfg)?;
        }
        Command::Canonical {
            weights,
            diag,
            base,
        } => {
            let spec = operator_spec(weights, diag)?;
            let report = commands::canonical(&cfg, &spec, parse_complex(base)?)?;
            emit(&report, &cfg)?;
        }
        Command::Curvature {
            weights,
            diag,
            base,
            radius,
            steps,
            h,
        } => {
            let spec = operator_spec(weights, diag)?;
            let report =
                commands::curvature(&cfg, &spec, parse_complex(base)?, *radius, *steps, *h)?;
            emit(&report, &cfg)?;
        }
        Command::Equiv {
            weights,
            diag,
            right_weights,
            right_diag,
            base,
        } => {
            let left = operator_spec(weights, diag)?;
            let right = operator_spec(right_weights, right_diag)?;
            let report = commands::equiv(&cfg, &left, &right, parse_complex(base)?)?;
            emit(&report, &cfg)?;
        }
        Command::Example { name } => match name {
            ExampleName::Tci => {
                let report = commands::example_tci(&cfg)?;
                emit(&report, &cfg)?;
            }
            ExampleName::Cndu => {
                let report = commands::example_cndu(&cfg)?;
                emit(&report, &cfg)?;
            }
        },
        Command::Suite => {
            let report = suite::run_suite(&cfg)?;
            for o in &report.outcomes {
                eprintln!(
                    "{} {} {} ({} ms): {}",
                    if o.passed { "PASS" } else { "FAIL" },
                    o.id,
                    o.title,
                    o.millis,
                    o.detail
                );
            }
            emit(&report, &cfg)?;
            return Ok(if report.all_passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            });
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("QCD_LOG", "error")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            let numerical = err
                .downcast_ref::<qcd_core::Error>()
                .is_some_and(qcd_core::Error::is_numerical);
            if numerical {
                ExitCode::from(3)
            } else {
                ExitCode::from(2)
            }
        }
    }
}
