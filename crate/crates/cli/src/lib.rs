//! Command-line companion to the core detection library: file formats,
//! configuration, and the subcommand implementations behind the
//! `statelink` binary.

pub mod commands;
pub mod config;
pub mod csvio;
pub mod error;
pub mod manifest;
pub mod persist;
