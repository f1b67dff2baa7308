//! Parallel verification runs, JSON reports, figure export and point
//! evaluation on top of `relpack-core`.

pub mod embed;
pub mod figure;
pub mod report;
pub mod runner;

pub use relpack_core;
