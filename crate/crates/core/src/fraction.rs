//! Exact rational values as they appear in configs and reports.
//!
//! Accepted text forms are `p/q`, plain integers and plain decimals
//! (`0.125`, `-3`, `2.5e-2`). Decimals are converted exactly, so `"0.1"`
//! is 1/10, not the nearest binary double.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Parses a rational from text; see the module docs for accepted forms.
pub fn parse_fraction(input: &str) -> Result<BigRational> {
    let s = input.trim();
    let bad = |reason: &str| Error::InvalidFraction {
        input: input.to_string(),
        reason: reason.to_string(),
    };
    if s.is_empty() {
        return Err(bad("empty"));
    }
    if let Some((num, den)) = s.split_once('/') {
        let num = parse_integer(num.trim()).ok_or_else(|| bad("numerator is not an integer"))?;
        let den = parse_integer(den.trim()).ok_or_else(|| bad("denominator is not an integer"))?;
        if den.is_zero() {
            return Err(bad("zero denominator"));
        }
        return Ok(BigRational::new(num, den));
    }
    parse_decimal(s).ok_or_else(|| bad("not a fraction or decimal"))
}

fn parse_integer(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix(['+', '-']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    BigInt::from_str(s.strip_prefix('+').unwrap_or(s)).ok()
}

fn parse_decimal(s: &str) -> Option<BigRational> {
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => {
            let exp: i32 = s[i + 1..].parse().ok()?;
            (&s[..i], exp)
        }
        None => (s, 0),
    };
    // Exponents beyond this are not probabilities or sample values.
    if exponent.unsigned_abs() > 400 {
        return None;
    }
    let (negative, body) = match mantissa.as_bytes().first()? {
        b'-' => (true, &mantissa[1..]),
        b'+' => (false, &mantissa[1..]),
        _ => (false, mantissa),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let mut num = BigInt::from_str(if digits.is_empty() { "0" } else { &digits }).ok()?;
    if negative {
        num = -num;
    }
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10u32);
    let value = if scale >= 0 {
        BigRational::from_integer(num * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(num, num_traits::pow(ten, (-scale) as usize))
    };
    Some(value)
}

/// Renders a rational as `p/q`, or just `p` for integers.
pub fn format_fraction(value: &BigRational) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// Exact rational conversion of a finite double.
///
/// Uses the shortest decimal that round-trips, which is what a user typed
/// in almost every case.
pub fn from_f64_decimal(x: f64) -> Option<BigRational> {
    if !x.is_finite() {
        return None;
    }
    parse_decimal(&format!("{x:e}"))
}

pub fn to_f64(value: &BigRational) -> f64 {
    value.to_f64().unwrap_or_else(|| {
        if value.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// A rational that (de)serializes as a `"p/q"` string.
///
/// Deserialization also accepts JSON numbers and decimal strings.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fraction(pub BigRational);

impl Fraction {
    pub fn new(num: i64, den: i64) -> Self {
        Fraction(BigRational::new(num.into(), den.into()))
    }

    pub fn to_f64(&self) -> f64 {
        to_f64(&self.0)
    }

    pub fn zero() -> Self {
        Fraction(BigRational::zero())
    }
}

impl From<BigRational> for Fraction {
    fn from(v: BigRational) -> Self {
        Fraction(v)
    }
}

impl FromStr for Fraction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_fraction(s).map(Fraction)
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_fraction(&self.0))
    }
}

impl Serialize for Fraction {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Fraction {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct FractionVisitor;

        impl Visitor<'_> for FractionVisitor {
            type Value = Fraction;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a fraction string like \"3/8\" or a number")
            }

            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Fraction, E> {
                parse_fraction(v).map(Fraction).map_err(E::custom)
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Fraction, E> {
                Ok(Fraction(BigRational::from_integer(v.into())))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Fraction, E> {
                Ok(Fraction(BigRational::from_integer(v.into())))
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<Fraction, E> {
                from_f64_decimal(v)
                    .map(Fraction)
                    .ok_or_else(|| E::custom("non-finite number"))
            }
        }

        deserializer.deserialize_any(FractionVisitor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn parses_fraction_forms() {
        assert_eq!(parse_fraction("3/8").unwrap(), q(3, 8));
        assert_eq!(parse_fraction(" -6/8 ").unwrap(), q(-3, 4));
        assert_eq!(parse_fraction("7").unwrap(), q(7, 1));
        assert_eq!(parse_fraction("0.1").unwrap(), q(1, 10));
        assert_eq!(parse_fraction(".5").unwrap(), q(1, 2));
        assert_eq!(parse_fraction("2.5e-2").unwrap(), q(1, 40));
        assert_eq!(parse_fraction("-1E3").unwrap(), q(-1000, 1));
    }

    #[test]
    fn rejects_garbage() {
        for s in ["", "1/0", "a/2", "1/2/3", "--1", "1.2.3", ".", "e5", "1e99999", "0x10"] {
            assert!(parse_fraction(s).is_err(), "{s:?} should be rejected");
        }
    }

    #[test]
    fn decimal_from_f64_is_shortest_repr() {
        assert_eq!(from_f64_decimal(0.3).unwrap(), q(3, 10));
        assert_eq!(from_f64_decimal(-2.0).unwrap(), q(-2, 1));
        assert!(from_f64_decimal(f64::NAN).is_none());
    }

    #[test]
    fn serde_accepts_strings_and_numbers() {
        let v: Vec<Fraction> = serde_json::from_str(r#"["3/8", 0.25, 2, "0.1"]"#).unwrap();
        assert_eq!(v[0].0, q(3, 8));
        assert_eq!(v[1].0, q(1, 4));
        assert_eq!(v[2].0, q(2, 1));
        assert_eq!(v[3].0, q(1, 10));
        assert_eq!(serde_json::to_string(&v).unwrap(), r#"["3/8","1/4","2","1/10"]"#);
    }

    proptest::proptest! {
        #[test]
        fn display_parse_roundtrip(n in -10_000i64..10_000, d in 1i64..10_000) {
            let f = Fraction::new(n, d);
            let back: Fraction = f.to_string().parse().unwrap();
            proptest::prop_assert_eq!(f, back);
        }
    }
}
