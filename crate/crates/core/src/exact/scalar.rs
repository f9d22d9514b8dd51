//! Arbitrary-precision rationals.
//!
//! `BigRational` already keeps every value in lowest terms with a positive
//! denominator, so the scalar type is an alias plus parsing and formatting
//! helpers used by the file formats.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{CoreError, Result};

pub type ExactScalar = BigRational;

/// Integer as an exact scalar.
pub fn int(n: i64) -> ExactScalar {
    BigRational::from_integer(BigInt::from(n))
}

/// `num/den` as an exact scalar. Panics on a zero denominator.
pub fn ratio(num: i64, den: i64) -> ExactScalar {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn zero() -> ExactScalar {
    ExactScalar::zero()
}

pub fn one() -> ExactScalar {
    ExactScalar::one()
}

/// Parse `"p"` or `"p/q"` (optional leading sign, surrounding whitespace ignored).
pub fn parse_rational(text: &str) -> Result<ExactScalar> {
    let t = text.trim();
    let bad = || CoreError::invalid(format!("not a rational number: {text:?}"));
    if t.is_empty() {
        return Err(bad());
    }
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let valid_int = |s: &str, signed: bool| {
        let digits = if signed {
            s.strip_prefix(['-', '+']).unwrap_or(s)
        } else {
            s
        };
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    if !valid_int(num, true) || !valid_int(den, false) {
        return Err(bad());
    }
    let n: BigInt = num.trim_start_matches('+').parse().map_err(|_| bad())?;
    let d: BigInt = den.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(CoreError::invalid(format!("zero denominator in {text:?}")));
    }
    Ok(BigRational::new(n, d))
}

/// Canonical lowest-terms string: `"p"` for integers, `"p/q"` otherwise.
pub fn format_rational(x: &ExactScalar) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub(crate) fn is_negative(x: &ExactScalar) -> bool {
    x.is_negative()
}
