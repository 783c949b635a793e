//! Exact arithmetic: record counts, laws over `S_n`, and the composition poset.

pub mod boundary;
pub mod extension;
pub mod laws;
pub mod polya;
pub mod stirling;
pub mod table;
pub mod window;
pub mod wtable;
