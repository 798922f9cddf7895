//! Command-line front end for `fitmetrics`.
//!
//! Exit codes: 0 success, 1 usage error, 2 data or schema error, 3 a
//! requested metric was undefined under `--strict`.

use std::ffi::OsString;
use std::fmt;
use std::io::Write;

use clap::Parser;

pub mod catalog;
pub mod cli;
mod commands;
pub mod report;

pub use report::ReportDocument;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DATA: i32 = 2;
pub const EXIT_UNDEFINED: i32 = 3;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Data(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Data(_) => EXIT_DATA,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Data(m) => f.write_str(m),
        }
    }
}

impl From<fitmetrics::Error> for CliError {
    fn from(err: fitmetrics::Error) -> Self {
        match err {
            fitmetrics::Error::Usage(_) => CliError::Usage(err.to_string()),
            _ => CliError::Data(err.to_string()),
        }
    }
}

/// A finished command: the report plus the output format and strictness.
pub struct Outcome {
    pub report: ReportDocument,
    pub format: cli::Format,
    pub strict: bool,
}

/// Parses `args` (including the program name) and runs the command,
/// writing the report to `out` and diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let parsed = match cli::Cli::try_parse_from(args) {
        Ok(parsed) => parsed,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            if code == EXIT_OK {
                let _ = write!(out, "{rendered}");
            } else {
                let _ = write!(err, "{rendered}");
            }
            return code;
        }
    };
    match commands::execute(parsed.command) {
        Ok(outcome) => {
            for w in &outcome.report.warnings {
                let _ = writeln!(err, "warning: {w}");
            }
            let text = match outcome.format {
                cli::Format::Json => outcome.report.to_json(),
                cli::Format::Table => outcome.report.to_table(),
            };
            if out.write_all(text.as_bytes()).is_err() {
                return EXIT_DATA;
            }
            if outcome.strict && outcome.report.any_undefined() {
                let _ = writeln!(
                    err,
                    "error: at least one requested metric is undefined (--strict)"
                );
                return EXIT_UNDEFINED;
            }
            EXIT_OK
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
