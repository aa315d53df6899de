//! Exact symbolic engine for ∞-harmonic maps between model Riemannian spaces.
//!
//! The crate computes energy densities, ∞-tension fields, harmonic and
//! p-tension fields for maps between Euclidean, semi-Euclidean, conformally
//! flat (stereographic sphere), Nil and Sol spaces, and checks each
//! classification criterion against the direct computation.
//!
//! Layers, bottom up:
//! - [`exprcore`]: canonical expressions with a decidable zero test
//! - [`cleared`]: quotients by products of nonvanishing polynomial factors
//! - [`spaces`]: metric catalog and Christoffel symbols
//! - [`mapspec`]: map families, JSON ingestion, holomorphic realification
//! - [`calculus`]: gradients, energy density, ∞-/2-/p-tension, scalar operators
//! - [`classify`]: per-theorem predictors, cross-validation and campaigns

pub mod calculus;
pub mod classify;
pub mod cleared;
pub mod error;
pub mod exprcore;
pub mod linalg;
pub mod mapspec;
pub mod scalar;
pub mod spaces;

pub use num_rational::BigRational;

/// Exact rational coefficient.
pub type Rational = BigRational;
/// Canonical expression with exact rational coefficients.
pub type Expr = exprcore::Expression<Rational>;
/// Expression with `f64` coefficients.
pub type Expr64 = exprcore::Expression<f64>;
/// Expression with `f32` coefficients.
pub type Expr32 = exprcore::Expression<f32>;

pub use cleared::Cleared;
pub use error::{Error, Result};
pub use scalar::{format_rational, parse_rational, rat, Scalar};
