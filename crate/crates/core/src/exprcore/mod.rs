//! Exact symbolic expressions: polynomials in the coordinates, multiplied by
//! exponentials of polynomials and by cosines/sines of single coordinates.
//!
//! Every value is kept in a canonical form, which makes the identically-zero
//! test a structural check. This is sound for the class because exponentials
//! with distinct polynomial exponents are linearly independent over the
//! polynomials, and sine-reduced trig monomials are linearly independent.

mod expression;
mod parse;
mod render;

pub use expression::{Expression, Monomial};
pub use parse::{coordinate_index, parse_ast, Ast};
pub use render::default_names;
