//! Exact computation of the singular locus of complete diagonals of the
//! Laurent expansions of rational functions.
//!
//! Given a rational function g/f in n variables and an integer tuple Q
//! spanning a saturated rank-r sublattice, the crate computes the complex
//! analytic set in the t-torus outside of which the complete Q-diagonal of
//! the Laurent series continues analytically: a union of discriminant sets
//! attached to faces of a Newton polytope. An independent series module
//! extracts exact diagonal coefficients and estimates convergence radii so
//! the two routes can be checked against each other.

pub mod elimination;
pub mod error;
pub mod lattice;
pub mod laurent;
pub mod polytope;
pub mod problem;
pub mod report;
pub mod series;
pub mod variety;

pub use error::{Error, Result};
