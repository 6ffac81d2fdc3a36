//! Puiseux-series jets of small solutions `x(λ)` of polynomial systems
//! `f(λ, x) = 0` near a degenerate zero at the origin.
//!
//! The pipeline eliminates unknowns through resultants indexed by labeled
//! trees, solves the final scalar equation with the Newton polygon, and lifts
//! each branch level by level, emitting a branch only when every lift is
//! certified unique and simple. Positive-dimensional families are detected
//! through GCD degree tests and reported, never parametrized.
//!
//! Layout:
//! - [`polycore`]: coefficients, sparse polynomials, truncated Puiseux jets,
//!   λ-normalization and linear regularization.
//! - [`elimination`]: resultants, GCD reports, tree and pairwise resultant systems.
//! - [`puiseux`]: Newton polygons, branch enumeration, simplicity certificates.
//! - [`scheme`]: trees, elimination chains, lifting, the solver, family
//!   detection, realness and residual checks.
//! - [`cli`]: the system file format, reports and the command-line front end.

pub mod cli;
pub mod elimination;
pub mod error;
pub mod polycore;
pub mod puiseux;
pub mod scheme;

pub use error::{Error, Result};
pub use polycore::{Coeff, JetPoly, LinearMap, MultiPoly, Order, PolySystem, PuiseuxJet, UniView};
