//! Workbench for total neighbour-sum-distinguishing colourings.

pub mod certificates;
pub mod cli;
pub mod colouring;
pub mod configurations;
pub mod density;
pub mod discharging;
pub mod error;
pub mod generate;
pub mod graph;
pub mod io;
pub mod polynomial;
pub mod prover;
pub mod rational;
pub mod solver;
pub mod sumsets;

pub use error::{Error, Result};
pub use graph::Graph;
