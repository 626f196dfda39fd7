//! Exact rational scalars.
//!
//! Everything numeric in the crate is a [`Rational`]; the textual form is
//! always `a/b` (or `a` for integers) so values round-trip losslessly.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `a`, `-a`, `a/b` or `-a/b`. Decimal points, exponents and a zero
/// denominator are rejected.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::BadRational(s.to_string());
    let t = s.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (t, None),
    };
    let parse_int = |x: &str| -> Result<BigInt> {
        let digits = x
            .strip_prefix('-')
            .or_else(|| x.strip_prefix('+'))
            .unwrap_or(x);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        x.parse::<BigInt>().map_err(|_| bad())
    };
    let n = parse_int(num)?;
    let d = match den {
        Some(d) => parse_int(d)?,
        None => BigInt::one(),
    };
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

/// `a/b` with `b > 0` in lowest terms, `a` when integral.
pub fn fmt_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Returns the value as a positive integer when it is one.
pub fn as_positive_int(q: &Rational) -> Option<u32> {
    if q.is_integer() && q.is_positive() {
        q.numer().to_string().parse().ok()
    } else {
        None
    }
}

/// Exact square root of a nonnegative rational, when it exists.
pub fn exact_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

pub(crate) mod serde_str {
    use serde::Serializer;

    use super::{fmt_rational, Rational};

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_rational(q))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_forms() {
        assert_eq!(parse_rational("3").unwrap(), int(3));
        assert_eq!(parse_rational("-3/6").unwrap(), frac(-1, 2));
        assert_eq!(parse_rational("4/-8").unwrap(), frac(-1, 2));
        for bad in ["", "1.5", "1/0", "a/b", "1e3", "/2", "3/"] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn sqrt() {
        assert_eq!(exact_sqrt(&frac(9, 4)), Some(frac(3, 2)));
        assert_eq!(exact_sqrt(&int(2)), None);
        assert_eq!(exact_sqrt(&int(-4)), None);
    }

    proptest! {
        #[test]
        fn printed_rationals_reparse(n in -10_000i64..10_000, d in 1i64..10_000) {
            let q = frac(n, d);
            prop_assert_eq!(parse_rational(&fmt_rational(&q)).unwrap(), q);
        }
    }
}
