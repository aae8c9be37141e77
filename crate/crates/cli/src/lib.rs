//! Command-line frontend: mask/data documents, report serialization and the
//! `subdiv` subcommands.

pub mod commands;
pub mod document;
pub mod report;

pub use commands::{run, Cli, Outcome};
