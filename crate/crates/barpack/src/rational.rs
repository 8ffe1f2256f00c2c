//! Exact rational arithmetic used for every bar height and bin load.
//!
//! All capacity checks in this crate are sharp inequalities (loads may sum to
//! exactly 1), so heights are never represented as floats. Input accepts both
//! fraction literals (`"3/5"`) and decimal literals (`"0.6"`); decimals are
//! converted exactly via powers of ten.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

/// Arbitrary-precision rational, always in lowest terms with a positive
/// denominator (guaranteed by the underlying representation).
pub type Rational = num_rational::BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseRationalError {
    #[error("empty rational literal")]
    Empty,
    #[error("invalid rational literal `{0}`")]
    Invalid(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

/// Parses `"p/q"`, `"p"`, or a decimal string such as `"0.6"` into an exact
/// rational. `"0.6"` becomes 3/5; no float is involved at any point.
pub fn parse_rational(text: &str) -> Result<Rational, ParseRationalError> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Err(ParseRationalError::Empty);
    }
    let invalid = || ParseRationalError::Invalid(trimmed.to_string());

    if let Some((num, den)) = trimmed.split_once('/') {
        let numer = parse_integer(num).ok_or_else(invalid)?;
        let denom = parse_integer(den).ok_or_else(invalid)?;
        if denom.is_zero() {
            return Err(ParseRationalError::ZeroDenominator(trimmed.to_string()));
        }
        return Ok(Rational::new(numer, denom));
    }

    // Decimal form: [sign] digits [. digits]
    let (sign, digits) = match trimmed.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, trimmed.strip_prefix('+').unwrap_or(trimmed)),
    };
    let (int_part, frac_part) = match digits.split_once('.') {
        Some((i, f)) => (i, f),
        None => (digits, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(invalid());
    }
    if !int_part.bytes().all(|b| b.is_ascii_digit()) || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
        return Err(invalid());
    }
    let mut numer: BigInt = if int_part.is_empty() {
        BigInt::zero()
    } else {
        int_part.parse().map_err(|_| invalid())?
    };
    let mut denom = BigInt::one();
    for digit in frac_part.bytes() {
        numer = numer * 10 + (digit - b'0');
        denom *= 10;
    }
    Ok(Rational::new(numer * sign, denom))
}

/// Canonical text form: `"p/q"` in lowest terms, or just `"p"` when the
/// denominator is 1. `parse_rational(format_rational(x)) == x` for all x.
pub fn format_rational(value: &Rational) -> String {
    value.to_string()
}

fn parse_integer(text: &str) -> Option<BigInt> {
    let text = text.trim();
    let unsigned = text.strip_prefix('-').or_else(|| text.strip_prefix('+')).unwrap_or(text);
    if unsigned.is_empty() || !unsigned.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    text.parse().ok()
}

/// Shorthand constructor, mostly for tests and generators.
pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// The big-bar threshold 1/2.
pub fn half() -> Rational {
    ratio(1, 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!(parse_rational("1/6").unwrap(), ratio(1, 6));
        assert_eq!(parse_rational("0.6").unwrap(), ratio(3, 5));
        assert_eq!(parse_rational("0.5").unwrap(), ratio(1, 2));
        assert_eq!(parse_rational("1").unwrap(), ratio(1, 1));
        assert_eq!(parse_rational("1.0").unwrap(), ratio(1, 1));
        assert_eq!(parse_rational(".25").unwrap(), ratio(1, 4));
        assert_eq!(parse_rational("2/4").unwrap(), ratio(1, 2));
        assert_eq!(parse_rational("-0.1").unwrap(), ratio(-1, 10));
    }

    #[test]
    fn rejects_garbage() {
        assert!(matches!(parse_rational(""), Err(ParseRationalError::Empty)));
        assert!(parse_rational(".").is_err());
        assert!(parse_rational("1e-3").is_err());
        assert!(parse_rational("a/b").is_err());
        assert!(matches!(
            parse_rational("1/0"),
            Err(ParseRationalError::ZeroDenominator(_))
        ));
    }

    #[test]
    fn formats_canonically() {
        assert_eq!(format_rational(&ratio(3, 5)), "3/5");
        assert_eq!(format_rational(&ratio(2, 2)), "1");
        assert_eq!(format_rational(&ratio(0, 7)), "0");
    }

    #[test]
    fn thirds_sum_exactly_to_one() {
        let third = ratio(1, 3);
        assert_eq!(&third + &third + &third, ratio(1, 1));
    }
}
