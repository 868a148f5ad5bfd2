//! Command-line front end for `gdcount-core`.
//!
//! Every subcommand produces a table that is written as CSV, or as a JSON
//! document with `config`, `grid`, `rows` (or `values`) and `metadata`.
//! Exit codes: 0 on success, 1 for invalid input, 2 for numerical failure.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod args;
mod commands;
mod error;
mod output;

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};

use clap::error::ErrorKind;
use clap::{CommandFactory, Parser};

pub use args::{Cli, Command, Format};
pub use commands::{table1_columns, TABLE1_COLUMNS};
pub use error::CliError;

/// Runs the tool on `args` (program name first) against the process's
/// standard streams and returns the exit code.
pub fn run_cli<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = io::stdout();
    let stderr = io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{}", e.render());
                    0
                }
                _ => {
                    let msg = e.render().to_string();
                    let _ = write!(stderr, "{msg}");
                    if !msg.contains("Usage:") {
                        let _ = writeln!(stderr, "\n{}", Cli::command().render_usage());
                    }
                    1
                }
            };
        }
    };
    match execute(&cli, stdout, stderr) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

fn execute(cli: &Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<(), CliError> {
    let (out, common) = match &cli.command {
        Command::Pmf(a) => (commands::pmf(a)?, &a.common),
        Command::Cdf(a) => (commands::cdf(a)?, &a.common),
        Command::Quantile(a) => (commands::quantile(a)?, &a.common),
        Command::Sample(a) => (commands::sample(a)?, &a.common),
        Command::Table1(a) => (commands::table1(a)?, &a.common),
        Command::Contour(a) => (commands::contour(a)?, &a.common),
    };
    for w in &out.warnings {
        writeln!(stderr, "warning: {w}")?;
    }
    match &common.output {
        Some(path) => {
            let mut f = BufWriter::new(File::create(path)?);
            out.write(common.format, &mut f)?;
            f.flush()?;
        }
        None => out.write(common.format, stdout)?,
    }
    Ok(())
}
