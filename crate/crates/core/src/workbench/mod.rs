//! Text front end: the model DSL, suite runner, reports and graph export.

pub mod dot;
pub mod dsl;
pub mod report;
pub mod suites;

pub use dot::export_dot;
pub use dsl::{parse_model, Model, ParseError};
pub use report::{Format, Record, Status, SuiteReport};
pub use suites::{replay, run_suite, SuiteError, SuiteOptions, SUITES};
