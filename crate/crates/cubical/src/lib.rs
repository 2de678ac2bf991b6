//! Exact combinatorics of right-angled Artin groups and their cube complexes.
//!
//! Everything here is exact: group elements are canonical normal forms over a
//! finite defining graph, hyperplanes are label + carrier-coset pairs,
//! boundary points are eventually periodic geodesic rays, and every verdict
//! that depends on a finite horizon is reported as such instead of being
//! guessed.
//!
//! The main entry point is [`Raag`], the ambient group context built from a
//! [`graph::DefiningGraph`]. Elements, hyperplanes, cosets, rays and so on are
//! plain data; all arithmetic goes through the context.
//!
//! The `parallel` feature (on by default) runs the heavy enumeration kernels
//! (ball scans, orbit searches, four-point hyperbolicity scans) on rayon;
//! without it the same kernels run sequentially with identical results.

pub mod ball;
pub mod bridge;
pub mod complex;
pub mod config;
pub mod error;
mod exec;
pub mod gates;
pub mod geometry;
pub mod graph;
pub mod invariants;
pub mod rays;
pub mod words;

pub use config::Config;
pub use error::Error;
pub use graph::{DefiningGraph, VertexId, VertexSet};
pub use words::{GroupElement, Letter, Raag, Sign};

/// Human-readable name of the execution backend compiled in.
pub fn backend() -> &'static str {
    exec::backend()
}
