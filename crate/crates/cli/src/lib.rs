//! Instance files, decision reports and subcommand dispatch for the
//! `ylocal` tool. The binary is a thin wrapper around [`commands::run`].

pub mod commands;
pub mod instance;
pub mod report;
pub mod verify;

pub use commands::{run, Invocation};
