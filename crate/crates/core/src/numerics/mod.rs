//! Exact arithmetic: rationals, integer polynomials, rational functions.

mod poly;
mod rational;

pub use poly::{
    poly_arith, smallest_root, IntPolynomial, PolyOp, RationalFunction, ROOT_GRID_CELLS,
};
pub use rational::Rational;

pub(crate) use poly::refine_bracket;
