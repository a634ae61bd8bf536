//! Reproduction harness: subcommands that write the figure data of the
//! cone-collapse model as CSV files with optional SVG line plots.
//!
//! Exit codes: 0 on success, 2 for invalid invocations or configuration,
//! 3 for numerical failures.

pub mod args;
pub mod commands;
pub mod config;
mod error;
pub mod presets;
pub mod svg;
pub mod table;

use args::{Cli, Command, SpecfunAction};
use clap::Parser;
use commands::classical::ClassicalConfig;
use commands::ScanConfig;
pub use error::{CliError, CliResult};
use std::ffi::OsString;
use std::path::PathBuf;
use table::write_tables;

/// Files written and text meant for standard output.
#[derive(Debug, Default)]
pub struct Outcome {
    pub files: Vec<PathBuf>,
    pub stdout: String,
}

pub fn run<I, T>(argv: I) -> CliResult<Outcome>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv)?;
    match cli.command {
        Command::BoundSpectrum(a) => scan("bound-spectrum", &a, commands::bound::run),
        Command::Ldos(a) => scan("ldos", &a, commands::ldos::run),
        Command::Feasibility(a) => scan("feasibility", &a, commands::feasibility::run),
        Command::Classical(a) => {
            let cfg = ClassicalConfig::resolve(&a)?;
            let tables = commands::classical::run(&cfg)?;
            let files = write_tables(&cfg.output.out_dir, &cfg.metadata(), &tables, cfg.output.format)?;
            Ok(Outcome {
                stdout: summary(&files),
                files,
            })
        }
        Command::Specfun {
            action: SpecfunAction::Eval { function, nu, x },
        } => Ok(Outcome {
            files: Vec::new(),
            stdout: commands::specfun::eval(&function, nu, x)?,
        }),
    }
}

fn scan(
    command: &'static str,
    args: &args::ScanArgs,
    f: fn(&ScanConfig) -> CliResult<Vec<table::Table>>,
) -> CliResult<Outcome> {
    let cfg = ScanConfig::resolve(command, args)?;
    let tables = f(&cfg)?;
    let files = write_tables(&cfg.output.out_dir, &cfg.metadata(), &tables, cfg.output.format)?;
    Ok(Outcome {
        stdout: summary(&files),
        files,
    })
}

fn summary(files: &[PathBuf]) -> String {
    files.iter().map(|f| format!("wrote {}\n", f.display())).collect()
}
