//! Exact rational scalars.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};

/// Arbitrary-precision rational number. All arithmetic in the crate is exact.
pub type Rational = BigRational;

/// `num / den` as an exact rational. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p/q"` or `"p"`. Surrounding whitespace and zero denominators are rejected.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::InvalidRational(s.to_string());
    if s.is_empty() || s.trim() != s {
        return Err(bad());
    }
    match s.split_once('/') {
        None => s.parse::<BigInt>().map(Rational::from_integer).map_err(|_| bad()),
        Some((p, q)) => {
            let p: BigInt = p.parse().map_err(|_| bad())?;
            let q: BigInt = q.parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
    }
}

/// Canonical `"p/q"` form: reduced, positive denominator, `"p"` when integral.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("-2/3").unwrap(), rat(-2, 3));
        assert_eq!(parse_rational("4/-6").unwrap(), rat(-2, 3));
        assert_eq!(parse_rational("7").unwrap(), int(7));
        assert_eq!(format_rational(&rat(6, 4)), "3/2");
        assert_eq!(format_rational(&rat(4, -2)), "-2");
        assert_eq!(format_rational(&int(0)), "0");
    }

    #[test]
    fn rejects_garbage() {
        for s in ["", "1/0", "a", "1.5", " 1", "1/2/3", "/2"] {
            assert!(parse_rational(s).is_err(), "{s:?} should be rejected");
        }
    }
}
