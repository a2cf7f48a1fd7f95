//! Simulation and chaos diagnostics for non-autonomous discrete dynamical
//! systems on compact metric spaces.
//!
//! A system is a sequence of continuous self-maps `f_1, f_2, ...` applied in
//! order, so the state after `n` steps is `f_n(...f_2(f_1(x)))`. The crate
//! builds such systems over the unit interval, the unit square, and one- or
//! two-sided binary shift spaces, then measures how pairs of orbits spread:
//! proximity/separation statistics, distributional lower and upper densities,
//! Li-Yorke pair detection, the DC1/DC2/DC2'/DC3 verdict ladder, and
//! sensitivity + accessibility (Kato) probes.
//!
//! The `system` module also constructs the k-th iterate of a system (sampling
//! every k-th composition), and the `harness` module packages experiments
//! that compare chaos verdicts between a system and its iterates, including a
//! shift-realized alternating construction whose even-time compositions all
//! collapse to the identity.
//!
//! Entry points:
//! - [`system::NDSystem`] — build and run systems, orbits, iterates.
//! - [`metrics`] — pair profiles, density estimates, verdicts.
//! - [`kato`] — sensitivity and accessibility probes.
//! - [`catalog`] — ready-made constructions (alternating counterexample,
//!   factorial-block pairs, nested ball families, selector points).
//! - [`harness`] — end-to-end experiments with pass/fail reports.
//! - [`config`] + [`runner`] — the file-driven front end used by the CLI.

pub mod catalog;
pub mod config;
pub mod emit;
pub mod error;
pub mod harness;
pub mod kato;
pub mod maps;
pub mod metrics;
pub mod runner;
pub mod sampling;
pub mod space;
pub mod symbolic;
pub mod system;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
