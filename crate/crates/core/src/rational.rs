//! Exact rational scalars.
//!
//! Every coefficient, node and value in the crate is a [`Rational`]. The
//! underlying `BigRational` keeps itself in canonical form (positive
//! denominator, reduced fraction) after every operation.

use num_bigint::BigInt;
use num_traits::{One, Signed};
use thiserror::Error;

pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RationalParseError {
    #[error("empty rational literal")]
    Empty,
    #[error("invalid integer `{0}` in rational literal")]
    InvalidInteger(String),
    #[error("denominator must be positive in `{0}`")]
    NonPositiveDenominator(String),
}

/// Parses `"a"` or `"a/b"` with `b > 0`. Surrounding whitespace is ignored.
pub fn parse_rational(text: &str) -> Result<Rational, RationalParseError> {
    let text = text.trim();
    if text.is_empty() {
        return Err(RationalParseError::Empty);
    }
    match text.split_once('/') {
        None => Ok(Rational::from_integer(parse_integer(text)?)),
        Some((num, den)) => {
            let num = parse_integer(num.trim())?;
            let den_text = den.trim();
            if den_text.starts_with('-') || den_text.starts_with('+') {
                return Err(RationalParseError::NonPositiveDenominator(text.to_string()));
            }
            let den = parse_integer(den_text)?;
            if !den.is_positive() {
                return Err(RationalParseError::NonPositiveDenominator(text.to_string()));
            }
            Ok(Rational::new(num, den))
        }
    }
}

fn parse_integer(text: &str) -> Result<BigInt, RationalParseError> {
    let digits = text.strip_prefix(['+', '-']).unwrap_or(text);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(RationalParseError::InvalidInteger(text.to_string()));
    }
    text.parse::<BigInt>()
        .map_err(|_| RationalParseError::InvalidInteger(text.to_string()))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// `n! / (n - m)!`, the coefficient produced by differentiating `x^n` `m` times.
pub fn falling_factorial(n: usize, m: usize) -> BigInt {
    debug_assert!(m <= n);
    ((n - m + 1)..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn factorial(n: usize) -> BigInt {
    falling_factorial(n, n)
}

/// Least common multiple of the denominators, used to clear a row of fractions.
pub(crate) fn denominator_lcm<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    use num_integer::Integer;
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}
