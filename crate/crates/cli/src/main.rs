use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use qhs_cli::output::{render, write_artifacts, Format};
use qhs_cli::{run, CliError, Command, ConfigFile, Overrides, RunConfig};

/// Exact hypergeometric series, mirror maps and localization checks.
#[derive(Debug, Parser)]
#[command(name = "qhs", version)]
struct Args {
    #[arg(value_enum)]
    command: Option<Command>,
    /// JSON run configuration.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Truncation order in the Novikov variables.
    #[arg(long, allow_negative_numbers = true)]
    order: Option<i64>,
    /// Order in the auxiliary variables of the double construction.
    #[arg(long, allow_negative_numbers = true)]
    zorder: Option<i64>,
    #[arg(long)]
    eps_seed: Option<u64>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Directory for the JSON and CSV artifacts.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main_inner(args: Args) -> Result<bool, CliError> {
    let file = match &args.config {
        Some(path) => ConfigFile::load(path)?,
        None => ConfigFile::default(),
    };
    let overrides = Overrides {
        command: args.command,
        order: args.order,
        zorder: args.zorder,
        eps_seed: args.eps_seed,
    };
    let config = RunConfig::resolve(file, overrides)?;
    let report = run(&config)?;
    print!("{}", render(&report, args.format)?);
    if let Some(dir) = &args.out {
        write_artifacts(&report, dir)?;
    }
    Ok(report.passed)
}

fn main() -> ExitCode {
    match main_inner(Args::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("qhs: some checks failed");
            ExitCode::from(3)
        }
        Err(e) => {
            eprintln!("qhs: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
