//! Exact rational scalars and points of the rational plane.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::lattice::LatticeVector;

pub type Rational = BigRational;

/// `n / 1` as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n / d` as a reduced rational. Panics when `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p"` or `"p/q"`; the result is reduced with positive denominator.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let r = Rational::from_str(t).map_err(|_| Error::Invalid(format!("bad rational {s:?}")))?;
    Ok(r)
}

/// Canonical text form: `"p/q"` reduced with `q > 0`, or `"p"` for integers.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// Converts to `f64`, only for rendering.
pub fn to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

/// A point of the rational plane.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point {
    pub x: Rational,
    pub y: Rational,
}

impl Point {
    pub fn new(x: Rational, y: Rational) -> Self {
        Point { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Point::new(int(x), int(y))
    }

    pub fn origin() -> Self {
        Point::new(Rational::zero(), Rational::zero())
    }

    /// `self + t * v`.
    pub fn offset(&self, v: LatticeVector, t: &Rational) -> Point {
        Point::new(&self.x + t * BigInt::from(v.x), &self.y + t * BigInt::from(v.y))
    }

    pub fn add(&self, other: &Point) -> Point {
        Point::new(&self.x + &other.x, &self.y + &other.y)
    }

    pub fn sub(&self, other: &Point) -> Point {
        Point::new(&self.x - &other.x, &self.y - &other.y)
    }

    /// Dot product with a lattice vector.
    pub fn dot(&self, v: LatticeVector) -> Rational {
        &self.x * BigInt::from(v.x) + &self.y * BigInt::from(v.y)
    }

    /// `det(self, v)` for a lattice vector `v`.
    pub fn cross(&self, v: LatticeVector) -> Rational {
        &self.x * BigInt::from(v.y) - &self.y * BigInt::from(v.x)
    }

    /// Applies an integer matrix `[[a, b], [c, d]]`.
    pub fn transform(&self, m: &[[i64; 2]; 2]) -> Point {
        let (a, b, c, d) = (BigInt::from(m[0][0]), BigInt::from(m[0][1]), BigInt::from(m[1][0]), BigInt::from(m[1][1]));
        Point::new(&self.x * a + &self.y * b, &self.x * c + &self.y * d)
    }

    /// If `self - base` is a nonnegative multiple `t * v`, returns `t`.
    pub fn param_along(&self, base: &Point, v: LatticeVector) -> Option<Rational> {
        let diff = self.sub(base);
        if !diff.cross(v).is_zero() {
            return None;
        }
        let t = if v.x != 0 { &diff.x / BigInt::from(v.x) } else { &diff.y / BigInt::from(v.y) };
        if t.is_negative() {
            None
        } else {
            Some(t)
        }
    }
}

impl Serialize for Point {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [format_rational(&self.x), format_rational(&self.y)].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Point {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [x, y] = <[String; 2]>::deserialize(d)?;
        let parse = |t: &str| parse_rational(t).map_err(serde::de::Error::custom);
        Ok(Point::new(parse(&x)?, parse(&y)?))
    }
}

/// Serde adapter writing a rational as its canonical string.
pub mod serde_rational {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let t = String::deserialize(d)?;
        parse_rational(&t).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for a list of rationals as `"p/q"` strings.
pub mod serde_rational_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(format_rational))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Rational>, D::Error> {
        Vec::<String>::deserialize(d)?.iter().map(|t| parse_rational(t).map_err(serde::de::Error::custom)).collect()
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// `1` as a rational, to avoid importing `One` at call sites.
pub fn one() -> Rational {
    Rational::one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_are_canonical() {
        assert_eq!(format_rational(&parse_rational("4/-6").unwrap()), "-2/3");
        assert_eq!(format_rational(&parse_rational(" 6/3 ").unwrap()), "2");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn param_along_detects_collinearity() {
        let base = Point::from_ints(1, 1);
        let v = LatticeVector::new(2, 1);
        assert_eq!(Point::from_ints(5, 3).param_along(&base, v), Some(int(2)));
        assert_eq!(Point::from_ints(5, 4).param_along(&base, v), None);
        assert_eq!(Point::from_ints(-1, 0).param_along(&base, v), None);
    }
}
