//! Exact rational arithmetic helpers.
//!
//! Every numeric quantity in this crate (costs, prizes, budgets,
//! thresholds) is an arbitrary-precision rational.  Floating point is
//! never used: table equality and budget feasibility are exact
//! comparisons, and a single rounding error would silently corrupt a
//! dynamic program.  This module wraps `num_rational::BigRational` with
//! the parsing/formatting rules of the instance file format.

use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Signed, ToPrimitive, Zero};

/// The scalar type used throughout the crate.
pub type Rational = num_rational::BigRational;

/// Shorthand for a rational from an integer.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for a rational from a numerator/denominator pair.
///
/// Panics if `den == 0`; intended for literals in code and tests.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Error produced when a token cannot be read as an exact rational.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalParseError {
    pub token: String,
    pub reason: &'static str,
}

impl fmt::Display for RationalParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid rational {:?}: {}", self.token, self.reason)
    }
}

impl std::error::Error for RationalParseError {}

/// Parses an exact rational from one of the accepted forms:
///
/// * an integer (`-3`, `42`)
/// * a finite decimal (`0.1` means exactly 1/10, never a binary float)
/// * a fraction `a/b` with integer parts (`7/3`, `-1/2`)
pub fn parse_rational(token: &str) -> Result<Rational, RationalParseError> {
    let err = |reason| RationalParseError {
        token: token.to_string(),
        reason,
    };
    let s = token.trim();
    if s.is_empty() {
        return Err(err("empty token"));
    }
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num.parse().map_err(|_| err("bad numerator"))?;
        let d: BigInt = den.parse().map_err(|_| err("bad denominator"))?;
        if d.is_zero() {
            return Err(err("zero denominator"));
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err("bad decimal digits"));
        }
        let negative = int_part.starts_with('-');
        let int_digits = int_part.strip_prefix(['-', '+']).unwrap_or(int_part);
        if !int_digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err("bad integer digits"));
        }
        // 12.345 == (12345) / 10^3, sign applied to the whole value so
        // that -0.5 parses as -1/2.
        let mut digits = String::with_capacity(int_digits.len() + frac_part.len());
        digits.push_str(if int_digits.is_empty() { "0" } else { int_digits });
        digits.push_str(frac_part);
        let mag: BigUint = digits.parse().map_err(|_| err("bad decimal digits"))?;
        let num = BigInt::from_biguint(if negative { Sign::Minus } else { Sign::Plus }, mag);
        let den = BigInt::from(10u32).pow(frac_part.len() as u32);
        return Ok(Rational::new(num, den));
    }
    let n: BigInt = s.parse().map_err(|_| err("not an integer, decimal or fraction"))?;
    Ok(Rational::from_integer(n))
}

/// Canonical text form: `a` for integers, `a/b` (reduced, b > 0) otherwise.
///
/// Round-trips exactly through [`parse_rational`].
pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// True when `q` has denominator one.
pub fn is_integer(q: &Rational) -> bool {
    q.is_integer()
}

/// ⌊q⌋ as a big integer.
pub fn floor_int(q: &Rational) -> BigInt {
    q.floor().to_integer()
}

/// ⌈q⌉ as a big integer.
pub fn ceil_int(q: &Rational) -> BigInt {
    q.ceil().to_integer()
}

/// ⌊lg q⌋ for q ≥ 1; `None` for q < 1 (including non-positive q).
///
/// For q ≥ 1 the value equals the bit length of ⌊q⌋ minus one.
pub fn floor_log2(q: &Rational) -> Option<u64> {
    if q < &Rational::one() {
        return None;
    }
    let fl = floor_int(q);
    Some(fl.bits() - 1)
}

/// ⌈lg m⌉ for a positive integer m.
pub fn ceil_log2(m: &BigInt) -> u64 {
    assert!(m.is_positive(), "ceil_log2 of non-positive integer");
    let bits = m.bits();
    if m.magnitude().count_ones() == 1 {
        bits - 1 // exact power of two
    } else {
        bits
    }
}

/// 2^t as a rational.
pub fn pow2(t: u64) -> Rational {
    Rational::from_integer(BigInt::one() << t)
}

/// Converts a non-negative big integer to usize, or `None` on overflow.
pub fn to_usize(n: &BigInt) -> Option<usize> {
    if n.is_negative() {
        None
    } else {
        n.to_usize()
    }
}
