//! Verification pipeline, file format and reports for hypercomplex nilpotent
//! Lie algebras, on top of the exact algebra in `hyperflat-core`.

pub mod catalog;
pub mod format;
pub mod pipeline;
pub mod report;
pub mod samples;

pub use format::{emit_algebra, parse_algebra, AlgebraFile, ParseError};
pub use pipeline::{run_pipeline, run_text, Options, CHECKS};
pub use report::{emit_report, Check, Format, Report, Verdict};
