//! Front end for the `bajra` binary: family specifications, reports and subcommands.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod report;
pub mod spec;

pub use commands::{run, Cli, Command, Outcome};
pub use report::ReportDocument;
pub use spec::FamilySpec;
