//! Library side of the `xxz` command: configuration layering, the
//! subcommand computations, CSV output and the verification suite.

pub mod commands;
pub mod config;
pub mod output;
pub mod verify;

pub use config::{Measure, Overrides, RunConfig};
pub use verify::{verify, VerifyOptions, VerifyReport};
