//! Arithmetic formulas for the elementary symmetric polynomials.
//!
//! The crate builds four formula families for `S^k_n` — the depth-three
//! Ben-Or interpolation formulas, homogeneous formulas via Newton's
//! identities and circuit-to-formula balancing, depth-four homogeneous
//! formulas, and monotone divide-and-conquer formulas — and verifies each one
//! against brute-force oracles by exact symbolic expansion. Alongside the
//! constructions it implements the structural decompositions of homogeneous
//! formulas into balanced and formed sums with validated certificates, and
//! evaluators for the associated monomial-count and size bounds.
//!
//! Everything symbolic is generic over the [`scalar::Scalar`] coefficient
//! type; the exact instantiation over arbitrary-precision rationals is the
//! canonical one and has the [`Rat`], [`Poly`], [`RatFormula`] and
//! [`RatCircuit`] aliases.

pub mod bounds;
pub mod constructions;
pub mod corpus;
pub mod decomposition;
pub mod error;
pub mod formula;
pub mod poly;
pub mod rng;
pub mod scalar;
pub mod selftest;

pub use error::{Error, Result};

/// Exact field scalar: arbitrary-precision rational, always reduced, with a
/// positive denominator.
pub type Rat = num_rational::BigRational;

/// Sparse polynomial over [`Rat`].
pub type Poly = poly::SparsePolynomial<Rat>;

/// Formula with [`Rat`] constants.
pub type RatFormula = formula::Formula<Rat>;

/// Circuit with [`Rat`] constants.
pub type RatCircuit = formula::Circuit<Rat>;

/// Convenience constructor used throughout tests and the CLI.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}
