//! Maximally dispersed point sets in the n-dimensional unit ball, the
//! certificates that pin down their shape, and the minimum spherical
//! containers for packing unit balls.
//!
//! Three connected facts drive the API:
//!
//! * `2n` points in the unit ball can keep pairwise distances `sqrt(2)`
//!   apart, and only the regular cross-polytope (the convex hull of
//!   `±e_1, ..., ±e_n`) achieves it ([`optimizer`], [`certify`]).
//! * Once a configuration has `n + 2` points, some pair is always within
//!   `sqrt(2)` of each other — and such a pair can be produced
//!   constructively rather than by exhaustive search
//!   ([`certify::find_close_pair`]).
//! * Consequently `k` unit balls, `n + 2 <= k <= 2n`, need a container of
//!   radius exactly `1 + sqrt(2)`, while `k <= n + 1` balls fit in
//!   `1 + sqrt(2 - 2/k)` ([`constructions`]).
//!
//! The crate is organized as a library first: see the runnable programs
//! under `examples/` for end-to-end tours, or the thin `orthoplex` binary
//! for the same functionality behind a command line.
//!
//! ```
//! use orthoplex::constructions::cross_polytope_vertices;
//! use orthoplex::certify::certify_cross_polytope;
//! use orthoplex::Tolerance;
//!
//! let vertices = cross_polytope_vertices(3, 1.0)?;
//! let cert = certify_cross_polytope(&vertices, Tolerance::default())?;
//! assert!(cert.verdict);
//! # Ok::<(), orthoplex::Error>(())
//! ```

pub mod certify;
pub mod cli;
pub mod constructions;
mod error;
pub mod geometry;
mod lp;
pub mod miniball;
pub mod optimizer;

pub use error::{Error, Result};
pub use geometry::{Ball, PointSet, Tolerance, Vector};
