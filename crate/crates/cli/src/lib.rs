//! Command-line front end: workspace files, subcommands, tables and DOT.

pub mod commands;
pub mod workspace;

pub use commands::{run_command, Output};
pub use workspace::{emit_workspace, parse_workspace, ParseError, Workspace};
