//! Command-line front end: argument parsing, catalog serialization and
//! dispatch onto the `selink` library.
//!
//! Exit codes: 0 success, 1 usage error, 2 integrity error (e.g. a
//! non-integral Betti number or a non-quasi-smooth input), 3 I/O error.

pub mod args;
pub mod catalog;
pub mod commands;
pub mod error;

use std::io::Write;

pub use args::{parse_invocation, Invocation, OutputFormat};
pub use catalog::{render_catalog, Catalog, Meta};
pub use commands::execute;
pub use error::CliError;

/// Executes `inv` against the process's stdout/stderr and returns the exit code.
pub fn run(inv: &Invocation) -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    match execute(inv, &mut stdout.lock(), &mut stderr.lock()) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr.lock(), "{e}");
            e.exit_code()
        }
    }
}

/// Parses `argv` and runs it.
pub fn main_with_args(argv: Vec<String>) -> i32 {
    match parse_invocation(argv) {
        Ok(inv) => run(&inv),
        Err(CliError::Help(text)) => {
            print!("{text}");
            0
        }
        Err(e) => {
            eprintln!("{e}");
            e.exit_code()
        }
    }
}
