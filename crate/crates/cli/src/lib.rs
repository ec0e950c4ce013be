//! Spec parsing, subcommands, the verification suite and report rendering behind
//! the `weil` command.

pub mod commands;
pub mod report;
pub mod spec;
pub mod suite;
