//! Command-line front end for `quantstab-core`.
//!
//! Every subcommand prints one document: JSON of the form
//! `{"header": {...}, "data": {...}}` or aligned text.

use std::ffi::OsString;
use std::io::Write;

use clap::error::ErrorKind;
use clap::Parser;

mod commands;
pub mod config;
pub mod error;
mod render;
pub mod tables;
mod verify;

use config::{Cli, Command, JobConfig};
use error::{CliError, Result, EXIT_IO, EXIT_USAGE};

fn dispatch(cmd: &Command, cfg: &JobConfig) -> Result<(render::Report, i32)> {
    let report = match cmd {
        Command::Roots { .. } => commands::roots(cfg)?,
        Command::Weyl { .. } => commands::weyl(cfg)?,
        Command::Stab { chamber, .. } => commands::stab(cfg, *chamber)?,
        Command::QuantumMatrix { part, .. } => commands::quantum(cfg, *part)?,
        Command::HeckeApply {
            input, operator, ..
        } => commands::hecke(cfg, input, operator)?,
        Command::Verify { .. } => return verify::run(cfg),
    };
    Ok((report, 0))
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    let cfg = JobConfig::from_command(&cli.command)?;
    let (report, code) = dispatch(&cli.command, &cfg)?;
    out.write_all(render::document(&cfg, &report)?.as_bytes())?;
    Ok(code)
}

/// Runs the command line `args` (program name first) and returns the exit
/// code. Documents go to `out`, diagnostics to `err`.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    return 0;
                }
                _ => EXIT_USAGE,
            };
            let _ = write!(err, "{}", e.render());
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "quantstab: {e}");
            if matches!(e, CliError::Usage(_)) {
                let _ = writeln!(err, "run with --help for usage");
            }
            e.exit_code()
        }
    }
}

/// `run_with` on the process streams.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let code = run_with(args, &mut stdout.lock(), &mut stderr.lock());
    if std::io::stdout().flush().is_err() {
        return EXIT_IO;
    }
    code
}
