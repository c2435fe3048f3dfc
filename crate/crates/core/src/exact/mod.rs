//! Exact arithmetic over Laurent polynomials and rational functions in
//! the half-power variable u = q^(1/2).
//!
//! Every quantity in the crate is computed symbolically over arbitrary
//! precision rationals; nothing is approximated.  Working in u rather
//! than q keeps the half-integral q-powers that appear in the verified
//! identities polynomial, at the cost of doubling exponents: q^e is
//! stored as u^(2e).

mod laurent;
mod rational_func;

pub use laurent::{int, rat, ExactRational, LaurentPoly};
pub use rational_func::RationalFunc;
