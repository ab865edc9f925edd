//! The scalar (field element) abstraction.
//!
//! All symbolic machinery is generic over [`Scalar`]. The canonical
//! instantiation is [`num_rational::BigRational`] (arbitrary-precision
//! rationals, always reduced, positive denominator), which makes every
//! expansion, interpolation and division in this crate exact. `f64` is also
//! supported for quick numeric experiments; it is *not* exact and must not be
//! used where coefficient-exact equality is asserted.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Signed, ToPrimitive};

/// Field-like coefficient type for polynomials and formula constants.
///
/// `Signed` pulls in the full `num_traits::Num` tower (ring ops, zero, one),
/// plus `abs`/`is_negative` which the monotonicity machinery needs.
pub trait Scalar:
    Clone + PartialEq + fmt::Debug + fmt::Display + Signed + FromPrimitive + 'static
{
    /// Render as a token of the formula grammar: `["-"] digits ["/" digits]`.
    fn token(&self) -> String;

    /// Parse a token of the formula grammar. Returns `None` on any deviation.
    fn parse_token(s: &str) -> Option<Self>;

    /// Lossy conversion for reporting and bound evaluation.
    fn to_f64_lossy(&self) -> f64;

    fn from_int(v: i64) -> Self {
        Self::from_i64(v).expect("integer out of range for scalar type")
    }
}

fn split_rational_token(s: &str) -> Option<(BigInt, BigInt)> {
    let (num_str, den_str) = match s.split_once('/') {
        Some((a, b)) => (a, Some(b)),
        None => (s, None),
    };
    let valid_int = |t: &str| {
        let t = t.strip_prefix('-').unwrap_or(t);
        !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit())
    };
    if !valid_int(num_str) {
        return None;
    }
    let numer: BigInt = num_str.parse().ok()?;
    let denom = match den_str {
        Some(d) => {
            // Grammar allows digits only here: no sign on the denominator.
            if !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit()) {
                d.parse().ok()?
            } else {
                return None;
            }
        }
        None => BigInt::from(1),
    };
    if denom == BigInt::from(0) {
        return None;
    }
    Some((numer, denom))
}

impl Scalar for BigRational {
    fn token(&self) -> String {
        // BigRational is kept reduced with a positive denominator, and its
        // Display ("5", "-3/2") is exactly the grammar's rational token.
        self.to_string()
    }

    fn parse_token(s: &str) -> Option<Self> {
        let (numer, denom) = split_rational_token(s)?;
        Some(BigRational::new(numer, denom))
    }

    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f64 {
    fn token(&self) -> String {
        // Every finite f64 is a dyadic rational; emit it exactly so that
        // serialize/parse round-trips bit-for-bit.
        match BigRational::from_float(*self) {
            Some(r) => r.to_string(),
            None => "0".to_string(),
        }
    }

    fn parse_token(s: &str) -> Option<Self> {
        let (numer, denom) = split_rational_token(s)?;
        let r = BigRational::new(numer, denom);
        r.to_f64()
    }

    fn to_f64_lossy(&self) -> f64 {
        *self
    }
}
