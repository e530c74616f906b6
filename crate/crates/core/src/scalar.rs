//! Scalar abstraction shared by every numeric container in the crate.
//!
//! All algorithms are written against [`Scalar`]. The exact instance,
//! [`BigRational`], is the one the correctness guarantees are stated for;
//! [`Rational64`] is exact until it overflows, and `f64` is provided for quick
//! experiments where rounding is acceptable.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{Num, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Field element used by vectors, matrices, constraints and the simplex.
pub trait Scalar: Clone + Debug + Display + PartialOrd + Num + Signed + Send + Sync + 'static {
    /// Converts an exact rational into this scalar type, or `None` if it
    /// cannot be represented.
    fn from_rational(value: &BigRational) -> Option<Self>;

    /// The exact rational value of `self`, or `None` for non-finite values.
    fn to_rational(&self) -> Option<BigRational>;

    /// Parses a decimal literal (`"2.7"`, `"-0.25"`) or a fraction (`"p/q"`).
    fn parse_literal(text: &str) -> Result<Self> {
        let exact = parse_rational(text)?;
        Self::from_rational(&exact).ok_or_else(|| Error::ParseScalar {
            text: text.to_string(),
            reason: "value not representable in the target scalar type",
        })
    }
}

impl Scalar for BigRational {
    fn from_rational(value: &BigRational) -> Option<Self> {
        Some(value.clone())
    }

    fn to_rational(&self) -> Option<BigRational> {
        Some(self.clone())
    }
}

impl Scalar for Rational64 {
    fn from_rational(value: &BigRational) -> Option<Self> {
        Some(Rational64::new(value.numer().to_i64()?, value.denom().to_i64()?))
    }

    fn to_rational(&self) -> Option<BigRational> {
        Some(BigRational::new((*self.numer()).into(), (*self.denom()).into()))
    }
}

impl Scalar for f64 {
    fn from_rational(value: &BigRational) -> Option<Self> {
        value.to_f64()
    }

    fn to_rational(&self) -> Option<BigRational> {
        BigRational::from_float(*self)
    }
}

/// Parses `text` into an exact rational without any floating-point step.
///
/// Accepted forms: an optionally signed integer, an optionally signed decimal
/// with digits on at least one side of the point, or `p/q` with integer `p`
/// and nonzero integer `q`.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let fail = |reason| Error::ParseScalar {
        text: text.to_string(),
        reason,
    };
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Err(fail("empty literal"));
    }

    if let Some((numer, denom)) = trimmed.split_once('/') {
        let numer = parse_integer(numer.trim()).ok_or_else(|| fail("malformed numerator"))?;
        let denom = parse_integer(denom.trim()).ok_or_else(|| fail("malformed denominator"))?;
        if denom.is_zero() {
            return Err(fail("zero denominator"));
        }
        return Ok(BigRational::new(numer, denom));
    }

    let (negative, unsigned) = match trimmed.as_bytes()[0] {
        b'-' => (true, &trimmed[1..]),
        b'+' => (false, &trimmed[1..]),
        _ => (false, trimmed),
    };
    let (whole, frac) = unsigned.split_once('.').unwrap_or((unsigned, ""));
    let digits_only = |s: &str| s.bytes().all(|b| b.is_ascii_digit());
    if (whole.is_empty() && frac.is_empty()) || !digits_only(whole) || !digits_only(frac) {
        return Err(fail("malformed decimal literal"));
    }

    let mut digits = String::with_capacity(whole.len() + frac.len());
    digits.push_str(whole);
    digits.push_str(frac);
    let mut numer = BigInt::from_str_radix(&digits, 10).map_err(|_| fail("malformed decimal literal"))?;
    if negative {
        numer = -numer;
    }
    let denom = num_traits::pow(BigInt::from(10u8), frac.len());
    Ok(BigRational::new(numer, denom))
}

fn parse_integer(text: &str) -> Option<BigInt> {
    let digits = text.strip_prefix(['-', '+']).unwrap_or(text);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    BigInt::from_str_radix(text.strip_prefix('+').unwrap_or(text), 10).ok()
}

/// Parses a scalar literal into any [`Scalar`] type.
pub fn parse_scalar<T: Scalar>(text: &str) -> Result<T> {
    T::parse_literal(text)
}
