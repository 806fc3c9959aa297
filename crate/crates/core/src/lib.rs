//! Exact q-Bernoulli and q-Euler polynomial families built from the
//! third Jackson q-exponential, with two-point q-Lidstone expansions and
//! certified numerics.

pub mod error;
pub mod lidstone;
pub mod numerics;
pub mod qfield;
pub mod qpolys;
pub mod qseries;

pub use error::{Error, Result};
