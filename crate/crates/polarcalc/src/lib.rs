//! Exact computation of polar-class degree invariants of projective
//! varieties from combinatorial input: lattice polytopes for toric
//! varieties, (degree, genus, stationary indices) for curves, and type
//! data for rational normal and elliptic scrolls.
//!
//! All arithmetic is exact (arbitrary-precision integers and rationals);
//! there is no floating point anywhere in the crate.

pub mod classes;
pub mod cli;
pub mod curves;
pub mod error;
pub mod exact;
pub mod polytope;
pub mod scrolls;
pub mod selftest;
pub mod toric;

pub use error::Error;

/// Default cap on lattice-point scans (bounding-box enumeration).
pub const DEFAULT_SCAN_BUDGET: u64 = 10_000_000;
