//! Exact scalar arithmetic on the unit interval.
//!
//! Every quantity the solver touches is a rational number with arbitrary
//! precision integer numerator and denominator, kept in lowest terms. No
//! operation ever rounds, so equalities like "this row is tight" are decided
//! exactly.

use std::fmt;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, re-exported so callers need not depend on
/// `num` directly.
pub type Rational = BigRational;

fn parse_digits(text: &str, whole: &str) -> Result<BigInt> {
    if text.is_empty() || !text.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::input(format!("malformed number literal {whole:?}")));
    }
    BigInt::parse_bytes(text.as_bytes(), 10)
        .ok_or_else(|| Error::input(format!("malformed number literal {whole:?}")))
}

/// Parses a number literal into an exact rational.
///
/// Accepted forms: decimal strings (`"0.85"` becomes 17/20 exactly), integer
/// ratios (`"13/15"`), and plain integers (`"1"`). Anything else, including
/// exponent notation, is an input error.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    let (negative, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    if body.is_empty() {
        return Err(Error::input(format!("malformed number literal {text:?}")));
    }
    let value = if let Some((numer, denom)) = body.split_once('/') {
        let numer = parse_digits(numer, s)?;
        let denom = parse_digits(denom, s)?;
        if denom.is_zero() {
            return Err(Error::input(format!("zero denominator in {text:?}")));
        }
        BigRational::new(numer, denom)
    } else if let Some((int_part, frac_part)) = body.split_once('.') {
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(Error::input(format!("malformed number literal {text:?}")));
        }
        let int_value = if int_part.is_empty() {
            BigInt::zero()
        } else {
            parse_digits(int_part, s)?
        };
        let frac_value = if frac_part.is_empty() {
            BigRational::zero()
        } else {
            let digits = parse_digits(frac_part, s)?;
            let scale = BigInt::from(10u32).pow(frac_part.len() as u32);
            BigRational::new(digits, scale)
        };
        BigRational::from_integer(int_value) + frac_value
    } else {
        BigRational::from_integer(parse_digits(body, s)?)
    };
    Ok(if negative { -value } else { value })
}

/// Canonical exact rendering: `"13/15"`, or the bare integer when the
/// denominator is 1. `parse_rational(render_exact(r)) == r` for every `r`.
pub fn render_exact(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn pow10(exp: i64) -> BigRational {
    let p = BigInt::from(10u32).pow(exp.unsigned_abs() as u32);
    if exp >= 0 {
        BigRational::from_integer(p)
    } else {
        BigRational::new(BigInt::one(), p)
    }
}

/// Decimal rendering to `sig_digits` significant digits, rounded half away
/// from zero, with trailing zeros trimmed. Advisory only; the exact form is
/// authoritative.
pub fn render_approx(r: &Rational, sig_digits: usize) -> String {
    assert!(sig_digits >= 1);
    if r.is_zero() {
        return "0".to_string();
    }
    let abs = r.abs();
    // exponent e with 10^e <= abs < 10^(e+1)
    let mut e = abs.numer().to_string().len() as i64 - abs.denom().to_string().len() as i64;
    while pow10(e) > abs {
        e -= 1;
    }
    while pow10(e + 1) <= abs {
        e += 1;
    }
    let scaled = &abs * pow10(sig_digits as i64 - 1 - e);
    let (quot, rem) = (scaled.numer() / scaled.denom(), scaled.numer() % scaled.denom());
    let rounded = if &rem * BigInt::from(2u32) >= *scaled.denom() {
        quot + BigInt::one()
    } else {
        quot
    };
    let mut digits = rounded.to_string();
    if digits.len() > sig_digits {
        // rounding carried into the next power of ten; extra digits are zeros
        digits.truncate(sig_digits);
        e += 1;
    }
    let body = if e < 0 {
        let digits = digits.trim_end_matches('0');
        format!("0.{}{}", "0".repeat((-e - 1) as usize), digits)
    } else if (e as usize) < sig_digits {
        let (int_part, frac_part) = digits.split_at(e as usize + 1);
        let frac_part = frac_part.trim_end_matches('0');
        if frac_part.is_empty() {
            int_part.to_string()
        } else {
            format!("{int_part}.{frac_part}")
        }
    } else {
        format!("{}{}", digits, "0".repeat(e as usize + 1 - sig_digits))
    };
    if r.is_negative() {
        format!("-{body}")
    } else {
        body
    }
}

/// An exact rational confined to `[0, 1]`. Matrix entries and assignment
/// coordinates all live here.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct UnitScalar(Rational);

impl UnitScalar {
    pub fn new(value: Rational) -> Result<Self> {
        if value.is_negative() || value > BigRational::one() {
            return Err(Error::input(format!(
                "value {} outside [0, 1]",
                render_exact(&value)
            )));
        }
        Ok(UnitScalar(value))
    }

    pub fn zero() -> Self {
        UnitScalar(BigRational::zero())
    }

    pub fn one() -> Self {
        UnitScalar(BigRational::one())
    }

    pub fn from_ratio(numer: i64, denom: i64) -> Result<Self> {
        if denom == 0 {
            return Err(Error::input("zero denominator"));
        }
        Self::new(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::new(parse_rational(text)?)
    }

    pub fn ratio(&self) -> &Rational {
        &self.0
    }

    pub fn into_ratio(self) -> Rational {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }
}

impl fmt::Display for UnitScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_exact(&self.0))
    }
}

/// A strictly positive exact rational: the right-hand side of one row
/// inequality. No upper bound; a requirement larger than the row sum simply
/// makes the system unsolvable.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Requirement(Rational);

impl Requirement {
    pub fn new(value: Rational) -> Result<Self> {
        if !value.is_positive() {
            return Err(Error::input(format!(
                "requirement {} must be positive",
                render_exact(&value)
            )));
        }
        Ok(Requirement(value))
    }

    pub fn from_ratio(numer: i64, denom: i64) -> Result<Self> {
        if denom == 0 {
            return Err(Error::input("zero denominator"));
        }
        Self::new(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::new(parse_rational(text)?)
    }

    pub fn ratio(&self) -> &Rational {
        &self.0
    }

    pub fn into_ratio(self) -> Rational {
        self.0
    }
}

impl fmt::Display for Requirement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_exact(&self.0))
    }
}

/// The Lukasiewicz t-norm `max(a + x - 1, 0)`.
///
/// Stays in `[0, 1]`, is nondecreasing in both arguments and has identity 1.
pub fn luk(a: &UnitScalar, x: &UnitScalar) -> UnitScalar {
    let sum = a.ratio() + x.ratio() - BigRational::one();
    if sum.is_negative() {
        UnitScalar::zero()
    } else {
        UnitScalar(sum)
    }
}
