//! Exact scalar arithmetic: rationals, real multi-quadratic extensions of ℚ,
//! and rational polynomials.
//!
//! Every number in this crate is exact.  [`Rational`] wraps an arbitrary-
//! precision fraction; [`ExactScalar`] adjoins square roots of positive
//! rationals (normal forms of orbit representatives need entries like
//! `μ/√2`); [`Poly`] provides the characteristic-polynomial factorisation
//! that drives eigenvalue classification.  No floating point participates in
//! any decision — floats appear only in optional display output.

mod poly;
mod rational;
mod surd;

pub use poly::{poly_even_factorization, Poly};
pub use rational::{positive_divisors, squarefree_decompose, Rational};
pub use surd::ExactScalar;
