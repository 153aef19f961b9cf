//! Command-line companion to the exact workbench: verification suites,
//! numeric probes, and seed-deterministic sampling.

pub mod numerics;
pub mod output;
pub mod random;
pub mod suites;
