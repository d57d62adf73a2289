//! Command-line surface for kempe-core: dimension, straightening, kernel and
//! decomposition commands, plus a replayable verification report.

pub mod cache;
pub mod checks;
pub mod commands;
pub mod config;
pub mod report;
pub mod verify;

pub use config::{Caps, OutputFormat, RunConfig, Suite};
pub use report::{CheckRecord, Verdict, VerificationReport};
pub use verify::{criteria, run_verification};
