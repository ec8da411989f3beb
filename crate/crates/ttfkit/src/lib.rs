//! Command-line harness for the finite-ring toolkit: spec files, the
//! example gallery, analysis reports and brute-force oracles.

pub mod analyze;
pub mod error;
pub mod gallery;
pub mod oracle;
pub mod parse;

pub use analyze::{analyze, render_text, AnalysisReport, Options};
pub use error::{HarnessError, Result};
pub use parse::{parse_file, parse_spec, Environment};
