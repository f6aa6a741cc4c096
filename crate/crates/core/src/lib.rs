//! Finite-category combinatorics and exact chain-level homotopy limits.

#![allow(clippy::needless_range_loop)]

pub mod chaincx;
pub mod fincat;
pub mod groth;
pub mod holim;
pub mod io;
pub mod nerve;
pub mod report;
pub mod samples;
pub mod error;

pub use error::{Error, Result};
