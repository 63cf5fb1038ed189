//! Front end for `hodgering-core`: input parsing, report assembly and the
//! regression corpus behind the `hodgering` binary.

pub mod commands;
pub mod regress;
pub mod report;

pub use commands::Failure;
pub use report::ReportDocument;
