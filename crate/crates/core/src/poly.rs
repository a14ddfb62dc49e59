//! Dense univariate polynomials over exact rationals.
//!
//! Coefficients are stored in ascending order of power with no trailing
//! zeros, so the zero polynomial is the empty sequence and has no degree.
//!
//! The text form renders descending powers, e.g. `1/2*x^3 - x^2 + 4*x + 3/2`,
//! and [`Polynomial::from_str`](std::str::FromStr) accepts the same grammar.

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::rational::{falling_factorial, Rational};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c * x^power`.
    pub fn monomial(c: Rational, power: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rational::zero(); power + 1];
        coeffs[power] = c;
        Self { coeffs }
    }

    /// `x^power` with unit coefficient.
    pub fn x_pow(power: usize) -> Self {
        Self::monomial(Rational::one(), power)
    }

    /// Builds a polynomial from ascending coefficients, trimming trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(
            coeffs
                .iter()
                .map(|&c| Rational::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    /// Ascending coefficients; empty for the zero polynomial.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `x^power`, zero beyond the stored range.
    pub fn coeff(&self, power: usize) -> Rational {
        self.coeffs
            .get(power)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiplies by `x`.
    pub fn shift_up(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Rational::zero());
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    /// The `order`-th formal derivative.
    pub fn derivative(&self, order: usize) -> Self {
        if order == 0 {
            return self.clone();
        }
        if self.coeffs.len() <= order {
            return Self::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(order)
            .map(|(power, c)| c * Rational::from_integer(falling_factorial(power, order)))
            .collect();
        Self::from_coeffs(coeffs)
    }

    /// Horner evaluation at `x`.
    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// `self - factor * other`, the update shape used throughout the recursions.
    pub fn sub_scaled(&self, factor: &Rational, other: &Polynomial) -> Self {
        self - &other.scale(factor)
    }

    /// Exponents carrying a nonzero coefficient, ascending.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(power, _)| power)
    }
}

fn zip_coeffs(
    a: &[Rational],
    b: &[Rational],
    op: impl Fn(&Rational, &Rational) -> Rational,
) -> Vec<Rational> {
    let zero = Rational::zero();
    (0..a.len().max(b.len()))
        .map(|i| op(a.get(i).unwrap_or(&zero), b.get(i).unwrap_or(&zero)))
        .collect()
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        Polynomial::from_coeffs(zip_coeffs(&self.coeffs, &rhs.coeffs, |a, b| a + b))
    }
}

impl Add for Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        Polynomial::from_coeffs(zip_coeffs(&self.coeffs, &rhs.coeffs, |a, b| a - b))
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        -&self
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (power, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;

            let magnitude = c.abs();
            match power {
                0 => write!(f, "{magnitude}")?,
                _ => {
                    if !magnitude.is_one() {
                        write!(f, "{magnitude}*")?;
                    }
                    if power == 1 {
                        f.write_str("x")?;
                    } else {
                        write!(f, "x^{power}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse polynomial at byte {position}: {message}")]
pub struct PolyParseError {
    pub position: usize,
    pub message: String,
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self
            .bytes
            .get(self.pos)
            .is_some_and(u8::is_ascii_whitespace)
        {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, byte: u8) -> bool {
        if self.peek() == Some(byte) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn error(&self, message: impl Into<String>) -> PolyParseError {
        PolyParseError {
            position: self.pos,
            message: message.into(),
        }
    }

    fn digits(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while self.bytes.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        (self.pos > start).then(|| std::str::from_utf8(&self.bytes[start..self.pos]).unwrap())
    }

    fn unsigned_rational(&mut self) -> Result<Option<Rational>, PolyParseError> {
        let Some(num) = self.digits() else {
            return Ok(None);
        };
        let num: BigInt = num.parse().unwrap();
        if !self.eat(b'/') {
            return Ok(Some(Rational::from_integer(num)));
        }
        let den = self
            .digits()
            .ok_or_else(|| self.error("expected denominator after `/`"))?;
        let den: BigInt = den.parse().unwrap();
        if den.is_zero() {
            return Err(self.error("zero denominator"));
        }
        Ok(Some(Rational::new(num, den)))
    }

    fn power_of_x(&mut self) -> Result<Option<usize>, PolyParseError> {
        if !self.eat(b'x') {
            return Ok(None);
        }
        if !self.eat(b'^') {
            return Ok(Some(1));
        }
        let exp = self
            .digits()
            .ok_or_else(|| self.error("expected exponent after `^`"))?;
        exp.parse()
            .map(Some)
            .map_err(|_| self.error("exponent out of range"))
    }

    /// One `[coef ['*']] [x['^'n]]` term, without its sign.
    fn term(&mut self) -> Result<(Rational, usize), PolyParseError> {
        let coef = self.unsigned_rational()?;
        if coef.is_some() {
            self.eat(b'*');
        }
        match (coef, self.power_of_x()?) {
            (Some(c), Some(p)) => Ok((c, p)),
            (Some(c), None) => Ok((c, 0)),
            (None, Some(p)) => Ok((Rational::one(), p)),
            (None, None) => Err(self.error("expected a coefficient or `x`")),
        }
    }
}

impl FromStr for Polynomial {
    type Err = PolyParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut cur = Cursor {
            bytes: s.as_bytes(),
            pos: 0,
        };
        let mut coeffs: Vec<Rational> = Vec::new();
        let mut first = true;
        loop {
            let negative = if cur.eat(b'-') {
                true
            } else if cur.eat(b'+') || first {
                false
            } else {
                break;
            };
            first = false;
            let (c, power) = cur.term()?;
            if coeffs.len() <= power {
                coeffs.resize(power + 1, Rational::zero());
            }
            if negative {
                coeffs[power] -= c;
            } else {
                coeffs[power] += c;
            }
        }
        if cur.peek().is_some() {
            return Err(cur.error("unexpected trailing input"));
        }
        Ok(Polynomial::from_coeffs(coeffs))
    }
}
