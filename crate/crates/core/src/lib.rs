//! Exact certification toolkit for δ-invariant bounds on smooth del Pezzo
//! surfaces.
//!
//! Everything is computed over arbitrary-precision rationals: certified
//! lower bounds for log canonical thresholds via Newton polygons, lattice
//! regions parameterized by the section degree m, Fourier–Motzkin
//! projections of intersection-inequality systems, exact row echelon forms
//! with monomial assignments, and the toric upper bounds via monomial
//! basis-type divisors.

pub mod assignment;
pub mod atlas;
pub mod cases;
pub mod error;
pub mod exact;
pub mod newton;
pub mod project;
pub mod regions;
pub mod svg;
pub mod toric;

pub use error::{Error, Result};
