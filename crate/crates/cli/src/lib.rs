//! Files, generators and commands around `colourful-core`.
//!
//! The binary in `main.rs` is a thin shell over [`commands`] and
//! [`generate()`]; everything here can be driven from tests without spawning
//! a process.

pub mod commands;
pub mod error;
pub mod format;
pub mod generate;
pub mod svg;

pub use commands::{enumerate, solve, verify};
pub use error::CliError;
pub use format::{Command, InstanceFile, InstanceKind, ResultFile};
pub use generate::generate;
