//! Exact scalars: big rationals and dense univariate polynomials over them.

pub mod poly;
pub mod rational;

pub use poly::{eval_poly, interpolate, UniPoly};
pub use rational::{frac, int, parse_rational, Rational};
