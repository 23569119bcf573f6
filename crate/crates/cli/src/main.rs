//! `runlaw` — failure probability of safety-critical applications on TDMA
//! networks crossing electromagnetic-interference zones.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use runlaw::Convention;
use runlaw_cli::config::{parse_config, ParsedConfig, Strictness};
use runlaw_cli::emit;
use runlaw_cli::error::CliError;
use runlaw_cli::presets;
use runlaw_cli::report::{run_compose, run_simulate, run_single, run_sweep, FailureReport};

/// Failure probability of TDMA-networked applications crossing EMI zones.
///
/// Zones and timing come from a JSON run configuration (see the README for
/// the schema); `repro` needs no configuration and emits the built-in
/// reference sweeps.
#[derive(Debug, Parser)]
#[command(name = "runlaw", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Path to the JSON run configuration
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Write the report here instead of stdout
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Output format [default: pretty]
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Threshold discretization: "tables" (floor, matches the published
    /// tables) or "eq5" (strict ceiling)
    #[arg(long, global = true, default_value_t = Convention::Tables)]
    convention: Convention,

    /// Warn about unknown config keys instead of rejecting them
    #[arg(long, global = true)]
    lenient: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate one zone at one cycle duration
    Eval,
    /// Evaluate one zone across a cycle-duration grid
    Sweep,
    /// Compose several zones into a trajectory failure probability
    Compose,
    /// Cross-check one evaluation by seeded Monte Carlo simulation
    Simulate {
        /// Number of simulated zone crossings
        #[arg(long, default_value_t = 1_000_000)]
        trials: u64,
        /// Master seed for the per-trial random streams
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Emit a published reference sweep from built-in presets
    Repro {
        /// Reference table: 1 (constant p=0.1) or 2 (radio pair)
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        table: u8,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    /// Comma-separated rows with a fixed header
    Csv,
    /// Whitespace-separated columns for plotting tools
    Plot,
    /// Human-readable summary
    Pretty,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let format = cli.format.unwrap_or(Format::Pretty);
    let strictness = if cli.lenient {
        Strictness::Lenient
    } else {
        Strictness::Strict
    };
    let mut warnings = Vec::new();

    let output = match cli.command {
        Command::Eval => {
            let req = load_config(cli.config.as_deref(), strictness, &mut warnings)?
                .into_single()?;
            let single = run_single(&req, cli.convention, &mut warnings)?;
            match format {
                Format::Csv | Format::Pretty => {
                    let report = FailureReport {
                        rows: vec![single.row],
                        meta: single.meta,
                    };
                    match format {
                        Format::Csv => emit::csv(&report),
                        _ => emit::pretty(&report),
                    }
                }
                Format::Plot => emit::profile_dump(&single.profile),
            }
        }
        Command::Sweep => {
            let spec = load_config(cli.config.as_deref(), strictness, &mut warnings)?
                .into_sweep()?;
            let report = run_sweep(&spec, cli.convention, &mut warnings)?;
            match format {
                Format::Csv => emit::csv(&report),
                Format::Plot => emit::plot_data(&report),
                Format::Pretty => emit::pretty(&report),
            }
        }
        Command::Compose => {
            let req = load_config(cli.config.as_deref(), strictness, &mut warnings)?
                .into_compose()?;
            let report = run_compose(&req, cli.convention, &mut warnings)?;
            match format {
                Format::Csv => emit::compose_csv(&report),
                Format::Plot => emit::compose_plot_data(&report),
                Format::Pretty => emit::compose_pretty(&report),
            }
        }
        Command::Simulate { trials, seed } => {
            if format == Format::Plot {
                return Err(CliError::Usage(
                    "`simulate` has no plot output; use --format csv or pretty".into(),
                ));
            }
            let req = load_config(cli.config.as_deref(), strictness, &mut warnings)?
                .into_single()?;
            let report = run_simulate(&req, trials, seed, cli.convention, &mut warnings)?;
            match format {
                Format::Csv => emit::simulate_csv(&report),
                _ => emit::simulate_pretty(&report),
            }
        }
        Command::Repro { table } => {
            if cli.config.is_some() {
                return Err(CliError::Usage(
                    "`repro` uses built-in presets; it does not read --config".into(),
                ));
            }
            if table == 1 {
                let report = run_sweep(&presets::table1(), cli.convention, &mut warnings)?;
                match format {
                    Format::Csv => emit::csv(&report),
                    Format::Plot => emit::plot_data(&report),
                    Format::Pretty => emit::pretty(&report),
                }
            } else {
                let (base_spec, prime_spec) = presets::table2();
                let base = run_sweep(&base_spec, cli.convention, &mut warnings)?;
                let prime = run_sweep(&prime_spec, cli.convention, &mut warnings)?;
                match format {
                    Format::Csv => emit::csv_pair(&base, &prime),
                    Format::Plot => emit::pair_plot_data(&base, &prime),
                    Format::Pretty => emit::pair_pretty(&base, &prime),
                }
            }
        }
    };

    for warning in &warnings {
        eprintln!("warning: {warning}");
    }
    write_output(cli.out.as_deref(), &output)
}

fn load_config(
    path: Option<&Path>,
    strictness: Strictness,
    warnings: &mut Vec<String>,
) -> Result<ParsedConfig, CliError> {
    let path = path.ok_or_else(|| {
        CliError::Usage("this subcommand needs --config <path>".into())
    })?;
    let text = fs::read_to_string(path)?;
    let mut parsed = parse_config(&text, strictness)?;
    warnings.append(&mut parsed.warnings);
    Ok(parsed)
}

fn write_output(out: Option<&Path>, output: &str) -> Result<(), CliError> {
    match out {
        None => {
            print!("{output}");
            Ok(())
        }
        Some(path) => Ok(fs::write(path, output)?),
    }
}
