//! Command-line front end: validate / sweep / sinr / sample-dump over a
//! scenario config file.

use clap::{Args, Parser, Subcommand};
use libnet::commands::{
    cmd_sample_dump, cmd_sinr, cmd_sweep, cmd_validate, Overrides, EXIT_SUCCESS, EXIT_USAGE,
};
use libnet::config::load_config;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "libnet",
    version,
    about = "Interference and SINR analysis for Poisson-distributed optical attocell networks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonArgs {
    /// Scenario config file (flat key = value format)
    #[arg(long)]
    config: PathBuf,
    /// Write the CSV result here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Replace the config seed
    #[arg(long)]
    seed_override: Option<u64>,
    /// Replace the config trial count
    #[arg(long)]
    trials_override: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Compare the closed-form mean interference against the quadrature
    /// oracle and a Monte Carlo run
    Validate {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Sweep one parameter and emit a CSV table of analytic vs empirical
    /// mean interference
    Sweep {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Estimate SINR coverage P(gamma > T) at the given thresholds
    Sinr {
        #[command(flatten)]
        common: CommonArgs,
        /// Comma-separated list of SINR thresholds
        #[arg(long, value_delimiter = ',')]
        thresholds: Vec<f64>,
    },
    /// Write one raw sampled interferer field as CSV
    SampleDump {
        #[command(flatten)]
        common: CommonArgs,
    },
}

fn overrides_from(common: &CommonArgs) -> Result<Overrides, String> {
    let max_points = match std::env::var("LIBNET_MAX_POINTS") {
        Ok(raw) => Some(
            raw.parse::<f64>()
                .map_err(|_| format!("LIBNET_MAX_POINTS must be a number, got '{raw}'"))?,
        ),
        Err(_) => None,
    };
    Ok(Overrides {
        seed: common.seed_override,
        trials: common.trials_override,
        max_points,
    })
}

/// Write to `--out` when given, else print to stdout.
fn emit(out: &Option<PathBuf>, content: &str) -> Result<(), String> {
    match out {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn load(path: &Path) -> Result<libnet::config::ScenarioConfig, i32> {
    load_config(path).map_err(|e| {
        eprintln!("config error: {e}");
        EXIT_USAGE
    })
}

fn run() -> i32 {
    let cli = Cli::parse();
    match cli.command {
        Command::Validate { common } => {
            let scenario = match load(&common.config) {
                Ok(sc) => sc,
                Err(code) => return code,
            };
            let overrides = match overrides_from(&common) {
                Ok(o) => o,
                Err(msg) => {
                    eprintln!("{msg}");
                    return EXIT_USAGE;
                }
            };
            match cmd_validate(&scenario, &overrides) {
                Ok(report) => {
                    print!("{}", report.render_text());
                    if let Some(path) = &common.out {
                        if let Err(msg) = emit(&Some(path.clone()), &report.to_csv()) {
                            eprintln!("{msg}");
                            return EXIT_USAGE;
                        }
                    }
                    report.exit_code()
                }
                Err(e) => {
                    eprintln!("validate failed: {e}");
                    e.exit_code()
                }
            }
        }
        Command::Sweep { common } => {
            let scenario = match load(&common.config) {
                Ok(sc) => sc,
                Err(code) => return code,
            };
            let overrides = match overrides_from(&common) {
                Ok(o) => o,
                Err(msg) => {
                    eprintln!("{msg}");
                    return EXIT_USAGE;
                }
            };
            match cmd_sweep(&scenario, &overrides) {
                Ok(table) => {
                    if let Err(msg) = emit(&common.out, &table.to_csv()) {
                        eprintln!("{msg}");
                        return EXIT_USAGE;
                    }
                    if let Some(violation) = &table.monotonicity_violation {
                        eprintln!("monotonicity check failed: {violation}");
                    }
                    table.exit_code()
                }
                Err(e) => {
                    eprintln!("sweep failed: {e}");
                    e.exit_code()
                }
            }
        }
        Command::Sinr { common, thresholds } => {
            let scenario = match load(&common.config) {
                Ok(sc) => sc,
                Err(code) => return code,
            };
            let overrides = match overrides_from(&common) {
                Ok(o) => o,
                Err(msg) => {
                    eprintln!("{msg}");
                    return EXIT_USAGE;
                }
            };
            match cmd_sinr(&scenario, &overrides, &thresholds) {
                Ok(report) => {
                    eprint!("{}", report.render_text());
                    if let Err(msg) = emit(&common.out, &report.to_csv()) {
                        eprintln!("{msg}");
                        return EXIT_USAGE;
                    }
                    EXIT_SUCCESS
                }
                Err(e) => {
                    eprintln!("sinr failed: {e}");
                    e.exit_code()
                }
            }
        }
        Command::SampleDump { common } => {
            let scenario = match load(&common.config) {
                Ok(sc) => sc,
                Err(code) => return code,
            };
            let overrides = match overrides_from(&common) {
                Ok(o) => o,
                Err(msg) => {
                    eprintln!("{msg}");
                    return EXIT_USAGE;
                }
            };
            match cmd_sample_dump(&scenario, &overrides) {
                Ok(csv) => {
                    if let Err(msg) = emit(&common.out, &csv) {
                        eprintln!("{msg}");
                        return EXIT_USAGE;
                    }
                    EXIT_SUCCESS
                }
                Err(e) => {
                    eprintln!("sample-dump failed: {e}");
                    e.exit_code()
                }
            }
        }
    }
}

fn main() -> ExitCode {
    ExitCode::from(run() as u8)
}
