//! Exact arithmetic substrate: rationals, polynomials, rational functions,
//! Laurent expansions and residues.

pub mod parse;
pub mod poly;
pub mod ratfunc;
pub mod rational;
pub mod series;

pub use parse::parse_rational_function;
pub use poly::Polynomial;
pub use ratfunc::{
    laurent_expand, order_at, residue_form, residue_sum_check, LaurentExpansion, Order, Point,
    RationalFunction,
};
pub use rational::{int, rat, Rational};
