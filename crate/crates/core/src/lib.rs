//! Exact arithmetic for Artin-Schreier covers of the projective line,
//! brute-force zeta oracles, surface rank combinatorics, and explicit
//! Mordell-Weil lattices of elliptic curves over rational function fields.
//!
//! Everything here is exact: finite field elements, polynomials, rational
//! functions, integer L-polynomial coefficients, and rational height
//! pairings.  No floating point enters any computation or result (the lone
//! exception is a non-load-bearing sanity check that the inverse roots of a
//! reconstructed zeta numerator sit on the right circle).

pub mod acceptance;
pub mod addpoly;
pub mod ascurve;
pub mod ff;
pub mod linalg;
pub mod mwlattice;
pub mod orbits;
pub mod surface;
pub mod zeta;

mod error;
pub use error::{Error, Result};
