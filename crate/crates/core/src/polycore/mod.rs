//! Coefficients, sparse polynomials in `(λ, x_1, …, x_n)`, Puiseux jets and
//! the preprocessing applied to input systems.

pub mod coeff;
pub mod jet;
pub mod poly;
pub mod prep;

pub use coeff::{Coeff, DEFAULT_PRECISION};
pub use jet::{compose, compose_slice, Assignment, JetPoly, Order, PuiseuxJet};
pub use poly::{gcd, MultiPoly, UniView};
pub use prep::{normalize_lambda, regularize, LinearMap, PolySystem};
