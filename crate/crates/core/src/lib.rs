//! Coherent random permutations governed by two-sided record statistics.

pub mod bijections;
pub mod composition;
pub mod error;
pub mod exact;
pub mod params;
pub mod perm;
pub mod ranking;
pub mod rational;
pub mod records;
pub mod sample;
pub mod shape;
pub mod verify;

pub use error::{Error, Result};
