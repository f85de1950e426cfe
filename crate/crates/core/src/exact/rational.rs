use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact scalar: a reduced fraction of arbitrary-precision integers.
/// `num_rational::BigRational` maintains the invariants we need
/// (denominator > 0, gcd(|num|, den) = 1 after every operation).
pub type Rational = num_rational::BigRational;

/// Rational from an integer.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Rational `n/d`. Panics if `d == 0`; intended for literals.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// 2^k as a rational.
pub fn pow2(k: u32) -> Rational {
    Rational::from_integer(BigInt::one() << k)
}

/// binomial(n, k) as a big integer (0 when k > n).
pub fn binomial(n: u32, k: u32) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    num_integer::binomial(BigUint::from(n), BigUint::from(k))
}

/// Canonical "num/den" form used by the JSON and CSV interfaces.
/// The denominator is always printed, e.g. `32/1`, `-5/126`.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses "p/q", an integer, or a plain decimal string ("0.001"),
/// all converted exactly. Decimals are scaled by a power of ten;
/// binary floating point is never involved.
pub fn parse_rational(input: &str) -> Result<Rational> {
    let s = input.trim();
    let err = || Error::NumberParse {
        input: input.to_string(),
    };
    if s.is_empty() {
        return Err(err());
    }
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num.trim().parse().map_err(|_| err())?;
        let d: BigInt = den.trim().parse().map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        let negative = int_part.starts_with('-');
        let int_digits = int_part
            .strip_prefix('-')
            .or_else(|| int_part.strip_prefix('+'))
            .unwrap_or(int_part);
        if !int_digits.chars().all(|c| c.is_ascii_digit())
            || frac_part.is_empty()
            || !frac_part.chars().all(|c| c.is_ascii_digit())
        {
            return Err(err());
        }
        let int_digits = if int_digits.is_empty() { "0" } else { int_digits };
        let whole: BigInt = int_digits.parse().map_err(|_| err())?;
        let frac: BigInt = frac_part.parse().map_err(|_| err())?;
        let scale = BigInt::from(10u8).pow(frac_part.len() as u32);
        let mut value = Rational::new(whole * &scale + frac, scale);
        if negative {
            value = -value;
        }
        return Ok(value);
    }
    let n: BigInt = s.parse().map_err(|_| err())?;
    Ok(Rational::from_integer(n))
}

/// Serde helper: rationals go over the wire as canonical "num/den" strings.
pub fn serialize_rational<S: serde::Serializer>(
    r: &Rational,
    serializer: S,
) -> std::result::Result<S::Ok, S::Error> {
    serializer.serialize_str(&format_rational(r))
}

/// Exact sign as -1, 0, or +1.
pub fn sign(r: &Rational) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_fraction_and_integer() {
        assert_eq!(parse_rational("5/126").unwrap(), rat(5, 126));
        assert_eq!(parse_rational("-3/9").unwrap(), rat(-1, 3));
        assert_eq!(parse_rational("7").unwrap(), rat_int(7));
        assert_eq!(parse_rational(" 10/-4 ").unwrap(), rat(-5, 2));
    }

    #[test]
    fn parse_decimal_is_exact() {
        assert_eq!(parse_rational("0.001").unwrap(), rat(1, 1000));
        assert_eq!(parse_rational("-2.5").unwrap(), rat(-5, 2));
        assert_eq!(parse_rational(".25").unwrap(), rat(1, 4));
        assert_eq!(parse_rational("3.000").unwrap(), rat_int(3));
    }

    #[test]
    fn parse_rejects_garbage() {
        for bad in ["", "1/0", "x", "1.2.3", "2e-3", "1.", "--3"] {
            assert!(parse_rational(bad).is_err(), "accepted {bad:?}");
        }
    }

    #[test]
    fn canonical_format_always_carries_denominator() {
        assert_eq!(format_rational(&rat_int(32)), "32/1");
        assert_eq!(format_rational(&rat(-10, 4)), "-5/2");
    }

    #[test]
    fn results_stay_reduced() {
        let a = rat(6, 4);
        let b = rat(10, 15);
        for v in [&a + &b, &a * &b, &a - &b, &a / &b, &a - &a] {
            assert_eq!(
                num_integer::gcd(v.numer().abs(), v.denom().clone()),
                BigInt::one()
            );
            assert!(v.denom() > &BigInt::zero());
        }
    }
}
