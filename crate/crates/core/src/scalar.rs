//! Exact rational scalars and their textual forms.
//!
//! Every value in the crate is a [`Scalar`], an arbitrary-precision rational.
//! Text input accepts `p/q`, integers and finite decimals (optionally with an
//! exponent); all of them are converted exactly. Output always uses the
//! canonical `p/q` form (or a bare integer when the denominator is one).

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Scalar = BigRational;

/// `num / den` as an exact scalar. Panics when `den == 0`.
pub fn rat(num: i64, den: i64) -> Scalar {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(value: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(value))
}

pub fn zero() -> Scalar {
    Scalar::zero()
}

pub fn one() -> Scalar {
    Scalar::one()
}

/// Sign as a scalar in {-1, 0, 1}.
pub fn signum(x: &Scalar) -> Scalar {
    if x.is_zero() {
        zero()
    } else if x.is_positive() {
        one()
    } else {
        -one()
    }
}

pub fn min(a: &Scalar, b: &Scalar) -> Scalar {
    if a <= b {
        a.clone()
    } else {
        b.clone()
    }
}

pub fn max(a: &Scalar, b: &Scalar) -> Scalar {
    if a >= b {
        a.clone()
    } else {
        b.clone()
    }
}

pub fn to_f64(x: &Scalar) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

pub fn format(x: &Scalar) -> String {
    x.to_string()
}

/// Parses `p/q`, an integer, or a decimal such as `-0.125` or `2.5e-3`.
pub fn parse(text: &str) -> Result<Scalar> {
    let s = text.trim().trim_matches('"').trim();
    if s.is_empty() {
        return Err(Error::Parse(format!("empty number in {text:?}")));
    }
    if let Some((num, den)) = s.split_once('/') {
        let num: BigInt = num.trim().parse().map_err(|_| Error::Parse(format!("bad numerator in {text:?}")))?;
        let den: BigInt = den.trim().parse().map_err(|_| Error::Parse(format!("bad denominator in {text:?}")))?;
        if den.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {text:?}")));
        }
        return Ok(BigRational::new(num, den));
    }
    parse_decimal(s).ok_or_else(|| Error::Parse(format!("not a rational or decimal: {text:?}")))
}

fn parse_decimal(s: &str) -> Option<Scalar> {
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => (&s[..pos], s[pos + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (whole, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if whole.is_empty() && frac.is_empty() {
        return None;
    }
    if !whole.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let all: BigInt = format!("{whole}{frac}").parse().ok()?;
    let scale = exponent - frac.len() as i32;
    let ten = BigInt::from(10u32);
    let mut value = BigRational::from_integer(all);
    if scale >= 0 {
        value *= BigRational::from_integer(num_traits::pow(ten, scale as usize));
    } else {
        value /= BigRational::from_integer(num_traits::pow(ten, (-scale) as usize));
    }
    Some(if negative { -value } else { value })
}

/// Parses a bracketed list such as `[1/5,7/10]` or `["-1/2", "7/10"]`.
pub fn parse_list(text: &str) -> Result<Vec<Scalar>> {
    let s = text.trim();
    let inner = s
        .strip_prefix('[')
        .and_then(|rest| rest.strip_suffix(']'))
        .ok_or_else(|| Error::Parse(format!("expected a bracketed list, got {text:?}")))?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner.split(',').map(parse).collect()
}

/// Serde adapter that reads and writes a scalar as a rational string.
///
/// Deserialization also accepts JSON numbers, converted through their decimal text.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Exact(pub Scalar);

impl fmt::Display for Exact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl From<Scalar> for Exact {
    fn from(value: Scalar) -> Self {
        Exact(value)
    }
}

impl Serialize for Exact {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for Exact {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct ExactVisitor;

        impl Visitor<'_> for ExactVisitor {
            type Value = Exact;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a rational string like \"3/10\" or a number")
            }

            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Exact, E> {
                parse(v).map(Exact).map_err(E::custom)
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Exact, E> {
                Ok(Exact(int(v)))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Exact, E> {
                Ok(Exact(BigRational::from_integer(BigInt::from(v))))
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<Exact, E> {
                if !v.is_finite() {
                    return Err(E::custom("non-finite number"));
                }
                parse(&format!("{v:e}")).map(Exact).map_err(E::custom)
            }
        }

        deserializer.deserialize_any(ExactVisitor)
    }
}

/// `#[serde(with = "scalar::as_string")]` for plain [`Scalar`] fields.
pub mod as_string {
    use super::{Exact, Scalar};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Scalar, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Scalar, D::Error> {
        Ok(Exact::deserialize(d)?.0)
    }
}

/// `#[serde(serialize_with = "scalar::strings")]` for `Vec<Scalar>` fields.
pub fn strings<S: Serializer>(xs: &[Scalar], s: S) -> std::result::Result<S::Ok, S::Error> {
    exact_vec(xs).serialize(s)
}

/// `#[serde(serialize_with = "scalar::string_rows")]` for `Vec<Vec<Scalar>>` fields.
pub fn string_rows<S: Serializer>(rows: &[Vec<Scalar>], s: S) -> std::result::Result<S::Ok, S::Error> {
    rows.iter().map(|row| exact_vec(row)).collect::<Vec<_>>().serialize(s)
}

pub(crate) fn exact_vec(values: &[Scalar]) -> Vec<Exact> {
    values.iter().cloned().map(Exact).collect()
}
