//! File formats, JSON verdicts and the `polycut` command line.

pub mod cli;
pub mod formats;
pub mod output;

pub use cli::{run, run_with_limits, ExitCode};
pub use output::Verdict;
