//! Exact scalar arithmetic: arbitrary-precision rationals plus a few helpers
//! for parsing, formatting and square roots.

use crate::error::{Error, Result};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use std::str::FromStr;

/// The scalar type used throughout: an arbitrary-precision rational.
pub type Rational = BigRational;

/// Shorthand for a rational from an integer.
pub fn rat_i(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// Shorthand for a rational fraction `n / d`.
pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Parse a rational from a decimal string such as `"3"`, `"-7/2"` or `"0"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    BigRational::from_str(s.trim())
        .map_err(|e| Error::InvalidInput(format!("bad rational {s:?}: {e}")))
}

/// Format a rational as `"n"` or `"n/d"` (lowest terms, denominator positive).
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// Convert a finite `f64` into the exact rational it denotes.
pub fn rational_from_f64(x: f64) -> Result<Rational> {
    BigRational::from_float(x)
        .ok_or_else(|| Error::InvalidInput(format!("non-finite coordinate {x}")))
}

/// Integer square root of a non-negative big integer, if the input is a
/// perfect square.
fn perfect_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &r * &r == *n {
        Some(r)
    } else {
        None
    }
}

/// Exact square root of a non-negative rational, if one exists in the
/// rationals.  Used by the upper-bound substitutions.
pub fn rational_sqrt(r: &Rational) -> Result<Rational> {
    if r.is_negative() {
        return Err(Error::IrrationalSquareRoot(r.to_string()));
    }
    if r.is_zero() {
        return Ok(Rational::zero());
    }
    let num = perfect_sqrt(r.numer());
    let den = perfect_sqrt(r.denom());
    match (num, den) {
        (Some(n), Some(d)) => Ok(BigRational::new(n, d)),
        _ => Err(Error::IrrationalSquareRoot(r.to_string())),
    }
}

/// `true` when the rational is a (non-negative) integer.
pub fn is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["0", "3", "-7/2", "1/3", "22"] {
            let r = parse_rational(s).unwrap();
            assert_eq!(format_rational(&r), s);
        }
        assert_eq!(parse_rational(" 4/8 ").unwrap(), rat(1, 2));
        assert!(parse_rational("a/b").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn sqrt_of_perfect_squares() {
        assert_eq!(rational_sqrt(&rat_i(9)).unwrap(), rat_i(3));
        assert_eq!(rational_sqrt(&rat(9, 4)).unwrap(), rat(3, 2));
        assert_eq!(rational_sqrt(&rat_i(0)).unwrap(), rat_i(0));
        assert!(rational_sqrt(&rat_i(2)).is_err());
        assert!(rational_sqrt(&rat_i(-1)).is_err());
    }

    #[test]
    fn float_conversion_is_exact() {
        assert_eq!(rational_from_f64(0.5).unwrap(), rat(1, 2));
        assert_eq!(rational_from_f64(3.0).unwrap(), rat_i(3));
        assert!(rational_from_f64(f64::NAN).is_err());
    }
}
