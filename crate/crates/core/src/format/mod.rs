//! Text formats: algebra files, poset files and reports.

mod algebra_file;
mod poset_file;
mod report;

pub use algebra_file::{emit_algebra_file, emit_arrow_table, parse_algebra_file};
pub use poset_file::parse_poset_file;
pub use report::{digest, Outcome, Report, ReportFormat, ARTIFACT, VERSION};
