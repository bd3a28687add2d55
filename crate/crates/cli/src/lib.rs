//! Command-line driver for `concyclic-core`: the `concyclic` binary's
//! argument handling, the JSON-lines results cache, the embedded Table 1
//! and a parallel search runner.

pub mod cache;
pub mod cli;
pub mod golden;
pub mod runner;
