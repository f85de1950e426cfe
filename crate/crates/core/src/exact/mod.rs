//! Exact scalar and polynomial arithmetic: reduced big-integer rationals,
//! sparse univariate polynomials in x, and (t,s)-bivariate polynomials
//! with Poly coefficients. Everything here is immutable and pure.

mod bipoly;
mod poly;
mod rational;

pub use bipoly::BiPoly;
pub use poly::Poly;
pub use rational::{
    binomial, format_rational, parse_rational, pow2, rat, rat_int, serialize_rational, sign,
    Rational,
};
