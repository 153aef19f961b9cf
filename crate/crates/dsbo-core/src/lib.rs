//! Exact symbolic workbench for differential symmetry-breaking operators
//! attached to the pair (GL(n+1,R), GL(n,R)).
//!
//! The crate builds, over exact rational arithmetic, the Weyl-algebra
//! operators whose column-ordered determinants produce the source operators
//! of the theory, applies them to covariant functions and formal power
//! products of matrix minors, and verifies the closed-form identities that
//! govern them: restriction identities, Bernstein-Sato-type identities with
//! their gamma-factor bookkeeping, and the complete classification of
//! distribution kernels at n = 2 including the multiplicity-two locus.
//!
//! The crate is `no_std` (with `alloc`); all floating point and I/O lives in
//! the companion CLI crate.

#![no_std]
#![deny(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod affine;
pub mod covariant;
pub mod delta;
pub mod expansion;
pub mod gamma;
pub mod identities;
pub mod latex;
pub mod params;
pub mod poly;
pub mod ratfun;
pub mod report;
pub mod scalar;
pub mod weyl;

pub use affine::AffineForm;
pub use poly::{Polynomial, Ring, VarSet};
pub use ratfun::RatFun;
pub use scalar::Rat;
