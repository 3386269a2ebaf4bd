//! Exact-arithmetic toolkit for toric-degeneration data of Grassmannians:
//! polygon triangulations, labelled trees, plabic graphs with their flow
//! model, and weight-vector initial ideals of Pluecker ideals.

pub mod cli;
pub mod error;
pub mod flow;
pub mod gr36;
pub mod plabic;
pub mod plucker;
pub mod poly;
pub mod polygon;
pub mod report;
pub mod tree;

pub use error::{Error, Result};

/// Entry point used by the `pdgn` binary; returns the process exit code.
pub fn run_cli() -> i32 {
    cli::run()
}
