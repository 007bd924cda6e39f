use std::path::PathBuf;
use std::process::ExitCode;

use cavity_purity::cli::{
    exit_code, format_sig, run_simulate, run_sweep, run_verify, ConfigOverrides, RunConfig,
    EXIT_VERIFY_FAILED,
};
use clap::{Args, Parser, Subcommand};

/// Atom-pair purity and photon-number dynamics in a coherently driven cavity.
#[derive(Parser)]
#[command(version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write one observable time series as CSV
    Simulate(Opts),
    /// Write one CSV per (ratio, nbar) point plus features.json
    Sweep(Opts),
    /// Compare closed-form amplitudes against direct diagonalization
    Verify(Opts),
}

#[derive(Args)]
struct Opts {
    /// JSON file with any of the flag values; flags take precedence
    #[arg(long)]
    config: Option<PathBuf>,
    #[command(flatten)]
    overrides: ConfigOverrides,
}

fn resolve(opts: Opts) -> cavity_purity::Result<RunConfig> {
    let file = opts
        .config
        .as_deref()
        .map(ConfigOverrides::from_json_file)
        .transpose()?;
    RunConfig::resolve(file, opts.overrides)
}

fn run(command: Command) -> cavity_purity::Result<i32> {
    match command {
        Command::Simulate(opts) => {
            let config = resolve(opts)?;
            let series = run_simulate(&config)?;
            eprintln!("wrote {} rows", series.len());
            Ok(0)
        }
        Command::Sweep(opts) => {
            let config = resolve(opts)?;
            let out = run_sweep(&config)?;
            for path in &out.csv_paths {
                eprintln!("wrote {}", path.display());
            }
            eprintln!("wrote {}", out.features_path.display());
            Ok(0)
        }
        Command::Verify(opts) => {
            let config = resolve(opts)?;
            let report = run_verify(&config)?;
            println!(
                "checked {} amplitude sets, max deviation {} (tolerance {})",
                report.points_checked,
                format_sig(report.max_deviation),
                format_sig(report.tolerance)
            );
            if report.passed() {
                Ok(0)
            } else {
                println!(
                    "worst: n = {}, ratio = {}, tau = {}",
                    report.worst_n,
                    format_sig(report.worst_ratio),
                    format_sig(report.worst_tau)
                );
                Ok(EXIT_VERIFY_FAILED)
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code as u8),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code(&err) as u8)
        }
    }
}
