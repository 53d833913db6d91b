//! Command-line front end for `omtrace`: file formats, command dispatch and
//! reports.

pub mod commands;
pub mod corpus;
pub mod error;
pub mod format;

use std::ffi::OsString;

pub use commands::{run, Cli};
pub use error::CliError;
pub use format::{AutomatonFile, DacmaFile};

/// Parses `argv`, runs the command and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    use clap::Parser;
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            code
        }
    }
}
