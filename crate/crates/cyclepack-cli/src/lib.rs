//! Command-line front end for the cycle packing solver.
//!
//! The library half hosts everything the binary needs so it stays testable:
//! the text file format ([`format`]), deterministic instance generators
//! ([`gen`]), the strategy dispatcher and pipeline driver ([`solve`]), and
//! the JSON report schema ([`report`]).

pub mod format;
pub mod gen;
pub mod report;
pub mod solve;
