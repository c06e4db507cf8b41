//! Library side of the `crossed` command: the element parser and the suite
//! runner. The binary in `main.rs` is a thin clap wrapper around these.

pub mod expr;
pub mod run;

pub use expr::{ExprContext, ParseError};
pub use run::{parse_suites, run_suite, Report, RunConfig, Suite, UsageError};
