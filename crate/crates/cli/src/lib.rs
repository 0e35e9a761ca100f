//! Command-line front end. `run` is the whole program; `main` only forwards
//! the process arguments and exit status.

mod cli;
pub mod commands;
mod error;
pub mod files;
pub mod json;
pub mod report;

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;

pub use cli::{Cli, Format};
pub use error::{CliError, CliResult};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERDICT_FALSE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_CAP: i32 = 3;

pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(stderr, "{}", e.render())
            } else {
                write!(stdout, "{}", e.render())
            };
            return code;
        }
    };
    let ctx = match commands::Context::new(cli.global.clone()) {
        Ok(c) => c,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return EXIT_INVALID;
        }
    };
    let outcome = match cli.global.workers {
        Some(0) => Err(error::invalid("--workers must be positive")),
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| commands::dispatch(&ctx, &cli.command)),
            Err(e) => Err(error::invalid(format!("cannot start {n} workers: {e}"))),
        },
        None => commands::dispatch(&ctx, &cli.command),
    };
    let outcome = match outcome {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return EXIT_INVALID;
        }
    };
    let text = match cli.global.format {
        Format::Json => outcome.json(),
        Format::Table => outcome.table(),
    };
    let _ = stdout.write_all(text.as_bytes());
    if cli.global.strict && !outcome.envelope.trusted {
        let _ = writeln!(stderr, "cap exceeded; results are not definitive");
        return EXIT_CAP;
    }
    if cli.global.assert && outcome.verdict != Some(true) {
        return EXIT_VERDICT_FALSE;
    }
    EXIT_OK
}
