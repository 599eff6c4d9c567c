//! Exact toolkit for odd colorings of sparse graphs.
//!
//! An odd `c`-coloring is a proper coloring with colors `1..=c` in which
//! every vertex of positive degree sees some color an odd number of times
//! on its neighborhood. The crate verifies and searches for such colorings,
//! computes maximum average degree exactly, builds the standard extremal
//! families, replays reducible-configuration arguments as constructive
//! colorers, and audits discharging rules on concrete graphs.

pub mod cli;
pub mod coloring;
pub mod discharging;
pub mod generators;
pub mod graph;
pub mod mad;
pub mod reductions;
pub mod solver;

pub use coloring::Coloring;
pub use graph::Graph;
pub use mad::Rational;
