//! Command-line front end for `lgsim-core`: configuration parsing,
//! experiment orchestration and deterministic CSV/JSON/SVG output.
//!
//! Exit codes: 0 success, 1 invariant or computation failure, 2 usage
//! error, 3 I/O error.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod config;
pub mod emit;
pub mod error;

use std::ffi::OsString;
use std::io::Write;

pub use commands::{run_command, Report};
pub use config::{parse_config, Command, Format, RunConfig, SEED_ENV};
pub use error::CliError;

/// Serializes `report` in the configured format.
pub fn render(cfg: &RunConfig, report: &Report) -> Result<String, CliError> {
    match cfg.format {
        config::Format::Csv => Ok(emit::emit_csv(report)),
        config::Format::Json => Ok(emit::emit_json(cfg, report)),
        config::Format::Svg => emit::emit_svg(cfg, report).ok_or_else(|| {
            CliError::Usage(format!("--format svg is not available for {}", cfg.command))
        }),
    }
}

fn write_output(cfg: &RunConfig, text: &str, stdout: &mut dyn Write) -> Result<(), CliError> {
    match &cfg.output_path {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display()))),
        None => stdout
            .write_all(text.as_bytes())
            .and_then(|_| stdout.flush())
            .map_err(|e| CliError::Io(format!("cannot write to stdout: {e}"))),
    }
}

/// Runs one parsed configuration, writing output and diagnostics.
pub fn execute(cfg: &RunConfig, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let report = match run_command(cfg) {
        Ok(r) => r,
        Err(e) => return fail(e, stderr),
    };
    let text = match render(cfg, &report) {
        Ok(t) => t,
        Err(e) => return fail(e, stderr),
    };
    if let Err(e) = write_output(cfg, &text, stdout) {
        return fail(e, stderr);
    }
    if report.failures.is_empty() {
        0
    } else {
        let msg = report.failures.join("; ");
        fail(CliError::Invariant(msg), stderr)
    }
}

fn fail(err: CliError, stderr: &mut dyn Write) -> i32 {
    let _ = writeln!(stderr, "lgsim: {err}");
    err.exit_code()
}

/// Full entry point: parse, run, emit. Returns the process exit code.
pub fn main_with<I, T>(
    args: I,
    env_seed: Option<String>,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match parse_config(args, env_seed) {
        Ok(cfg) => execute(&cfg, stdout, stderr),
        Err(CliError::Info(text)) => {
            let _ = write!(stdout, "{text}");
            0
        }
        Err(CliError::Usage(text)) => {
            let _ = write!(stderr, "{}", text.trim_end());
            let _ = writeln!(stderr);
            2
        }
        Err(e) => fail(e, stderr),
    }
}
