//! Exact scalar layer.
//!
//! Every quantity the library reasons about (neighbourhood ratios, deficiencies,
//! thresholds) is an exact fraction `Ratio<T>` over some integer type `T`. The
//! algorithms are written against [`ExactInt`] so the same code runs on `i64`,
//! `i128` or arbitrary-precision `BigInt`; the crate root fixes the common
//! instantiations as [`crate::Rational`] and [`crate::BigRational`].

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{FromPrimitive, Signed, ToPrimitive};
use serde::{de, Deserialize, Deserializer, Serializer};

/// Integer backing type for exact fractions.
pub trait ExactInt:
    Integer
    + Signed
    + Clone
    + Debug
    + Display
    + FromStr
    + FromPrimitive
    + ToPrimitive
    + Hash
    + Send
    + Sync
    + 'static
{
}

impl<T> ExactInt for T where
    T: Integer
        + Signed
        + Clone
        + Debug
        + Display
        + FromStr
        + FromPrimitive
        + ToPrimitive
        + Hash
        + Send
        + Sync
        + 'static
{
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseRationalError {
    #[error("malformed rational {0:?}: expected \"p/q\" or \"n\"")]
    Malformed(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
}

/// Parses `"p/q"` or `"n"` into a reduced fraction with positive denominator.
pub fn parse_rational<T: ExactInt>(text: &str) -> Result<Ratio<T>, ParseRationalError> {
    let text = text.trim();
    let malformed = || ParseRationalError::Malformed(text.to_string());
    let (numer, denom) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let numer: T = numer.parse().map_err(|_| malformed())?;
    let denom: T = denom.parse().map_err(|_| malformed())?;
    if denom.is_zero() {
        return Err(ParseRationalError::ZeroDenominator(text.to_string()));
    }
    Ok(Ratio::new(numer, denom))
}

/// Renders as `"p/q"`, or `"n"` when the denominator is one.
pub fn format_rational<T: ExactInt>(value: &Ratio<T>) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// Builds `n/d` from machine integers; panics only if `T` cannot hold them.
pub fn ratio_from<T: ExactInt>(numer: i64, denom: i64) -> Ratio<T> {
    let n = T::from_i64(numer).expect("numerator fits the scalar type");
    let d = T::from_i64(denom).expect("denominator fits the scalar type");
    Ratio::new(n, d)
}

pub fn int<T: ExactInt>(value: i64) -> Ratio<T> {
    ratio_from(value, 1)
}

/// Ceiling of `a / b` for positive integers.
pub(crate) fn ceil_div(a: u64, b: u64) -> u64 {
    a.div_ceil(b)
}

/// Serde adapter storing a fraction as its canonical string.
pub mod serde_ratio {
    use super::*;

    pub fn serialize<T: ExactInt, S: Serializer>(
        value: &Ratio<T>,
        serializer: S,
    ) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&format_rational(value))
    }

    pub fn deserialize<'de, T: ExactInt, D: Deserializer<'de>>(
        deserializer: D,
    ) -> Result<Ratio<T>, D::Error> {
        let text = String::deserialize(deserializer)?;
        parse_rational(&text).map_err(de::Error::custom)
    }
}

/// Serde adapter for optional fractions (`null` when absent).
pub mod serde_opt_ratio {
    use super::*;

    pub fn serialize<T: ExactInt, S: Serializer>(
        value: &Option<Ratio<T>>,
        serializer: S,
    ) -> Result<S::Ok, S::Error> {
        match value {
            Some(v) => serializer.serialize_some(&format_rational(v)),
            None => serializer.serialize_none(),
        }
    }

    pub fn deserialize<'de, T: ExactInt, D: Deserializer<'de>>(
        deserializer: D,
    ) -> Result<Option<Ratio<T>>, D::Error> {
        let text = Option::<String>::deserialize(deserializer)?;
        text.map(|t| parse_rational(&t).map_err(de::Error::custom))
            .transpose()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn parses_fractions_and_integers() {
        let r: Ratio<i64> = parse_rational("10/6").unwrap();
        assert_eq!(r, Ratio::new(5, 3));
        let r: Ratio<i64> = parse_rational("-4").unwrap();
        assert_eq!(r, Ratio::from_integer(-4));
        let r: Ratio<i64> = parse_rational("1/-3").unwrap();
        assert_eq!(*r.denom(), 3);
        assert_eq!(*r.numer(), -1);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            parse_rational::<i64>("1/0"),
            Err(ParseRationalError::ZeroDenominator(_))
        ));
        assert!(parse_rational::<i64>("a/b").is_err());
        assert!(parse_rational::<i64>("").is_err());
        assert!(parse_rational::<i64>("1/2/3").is_err());
    }

    #[test]
    fn renders_canonically() {
        assert_eq!(format_rational(&Ratio::new(10i64, 6)), "5/3");
        assert_eq!(format_rational(&Ratio::new(4i64, 2)), "2");
        assert_eq!(format_rational(&Ratio::new(-1i64, 3)), "-1/3");
        let big: Ratio<BigInt> = parse_rational("123456789012345678901234567890/3").unwrap();
        assert_eq!(format_rational(&big), "41152263004115226300411522630");
    }

    #[test]
    fn ceil_div_matches_definition() {
        assert_eq!(ceil_div(7, 3), 3);
        assert_eq!(ceil_div(6, 3), 2);
        assert_eq!(ceil_div(1, 5), 1);
    }
}
