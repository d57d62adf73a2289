//! Exact computations in rings of graph invariants of n points on the line.

pub mod error;
pub mod exactfield;
pub mod graphalg;
pub mod invring;
pub mod relcat;
pub mod symrep;

pub use error::{Error, Result};
