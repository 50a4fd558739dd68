//! Arbitrary-precision rationals and their `"a/b"` string form.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::ArithError;

/// Exact rational number; always normalized with a positive denominator.
pub type Rational = BigRational;

/// Parses `"a/b"` or a bare integer `"a"`.
pub fn parse_rational(s: &str) -> Result<Rational, ArithError> {
    let t = s.trim();
    let bad = || ArithError::BadRational(s.to_string());
    match t.split_once('/') {
        Some((a, b)) => {
            let a: BigInt = a.trim().parse().map_err(|_| bad())?;
            let b: BigInt = b.trim().parse().map_err(|_| bad())?;
            if b.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(a, b))
        }
        None => {
            let a: BigInt = t.parse().map_err(|_| bad())?;
            Ok(Rational::from_integer(a))
        }
    }
}

/// Canonical `"a/b"` form; the denominator is always printed.
pub fn format_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        let q = parse_rational("6/-4").unwrap();
        assert_eq!(format_rational(&q), "-3/2");
        assert_eq!(format_rational(&parse_rational(" 7 ").unwrap()), "7/1");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }
}
