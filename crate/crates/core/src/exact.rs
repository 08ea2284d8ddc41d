//! Exact rational scalars and 2-vectors.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// `n / d` as an exact rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn to_f64(r: &Rational) -> f64 {
    // Ratio::to_f64 is exact-ish even when numerator and denominator overflow f64 separately.
    r.to_f64().unwrap_or(f64::NAN)
}

/// Canonical `"num/den"` text form; integers keep the `/1`.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Accepts `"a/b"`, `"a"` and surrounding whitespace.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Input(format!("malformed rational {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(Error::Input(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(n, d))
}

pub fn lcm_of_denominators<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values.into_iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// Serde adapter: rationals travel as `"num/den"` strings.
pub mod serde_rational {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vec2 {
    pub x: Rational,
    pub y: Rational,
}

impl Vec2 {
    pub fn new(x: Rational, y: Rational) -> Self {
        Vec2 { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Vec2::new(int(x), int(y))
    }

    pub fn zero() -> Self {
        Vec2::new(Rational::zero(), Rational::zero())
    }

    pub fn dot(&self, other: &Vec2) -> Rational {
        &self.x * &other.x + &self.y * &other.y
    }

    /// z-component of the 3-d cross product.
    pub fn cross(&self, other: &Vec2) -> Rational {
        &self.x * &other.y - &self.y * &other.x
    }

    pub fn scale(&self, t: &Rational) -> Vec2 {
        Vec2::new(&self.x * t, &self.y * t)
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn is_integral(&self) -> bool {
        self.x.is_integer() && self.y.is_integer()
    }

    pub fn to_f64(&self) -> [f64; 2] {
        [to_f64(&self.x), to_f64(&self.y)]
    }

    /// Rotate by +90 degrees.
    pub fn perp(&self) -> Vec2 {
        Vec2::new(-&self.y, self.x.clone())
    }
}

impl fmt::Debug for Vec2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl fmt::Display for Vec2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl Add for &Vec2 {
    type Output = Vec2;
    fn add(self, o: &Vec2) -> Vec2 {
        Vec2::new(&self.x + &o.x, &self.y + &o.y)
    }
}

impl Sub for &Vec2 {
    type Output = Vec2;
    fn sub(self, o: &Vec2) -> Vec2 {
        Vec2::new(&self.x - &o.x, &self.y - &o.y)
    }
}

impl Neg for &Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2::new(-&self.x, -&self.y)
    }
}

impl Mul<&Rational> for &Vec2 {
    type Output = Vec2;
    fn mul(self, t: &Rational) -> Vec2 {
        self.scale(t)
    }
}

impl Serialize for Vec2 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [format_rational(&self.x), format_rational(&self.y)].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Vec2 {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Vec2, D::Error> {
        let [x, y] = <[String; 2]>::deserialize(d)?;
        let x = parse_rational(&x).map_err(serde::de::Error::custom)?;
        let y = parse_rational(&y).map_err(serde::de::Error::custom)?;
        Ok(Vec2::new(x, y))
    }
}

/// Integer 2x2 matrix acting on column vectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Mat2(pub [[i64; 2]; 2]);

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2([[1, 0], [0, 1]]);

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        let a = &self.0;
        let b = &o.0;
        Mat2([
            [
                a[0][0] * b[0][0] + a[0][1] * b[1][0],
                a[0][0] * b[0][1] + a[0][1] * b[1][1],
            ],
            [
                a[1][0] * b[0][0] + a[1][1] * b[1][0],
                a[1][0] * b[0][1] + a[1][1] * b[1][1],
            ],
        ])
    }

    pub fn transpose(&self) -> Mat2 {
        let a = &self.0;
        Mat2([[a[0][0], a[1][0]], [a[0][1], a[1][1]]])
    }

    pub fn det(&self) -> i64 {
        self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]
    }

    /// Inverse of a unimodular matrix.
    pub fn inverse_unimodular(&self) -> Option<Mat2> {
        let d = self.det();
        if d.abs() != 1 {
            return None;
        }
        let a = &self.0;
        Some(Mat2([[a[1][1] * d, -a[0][1] * d], [-a[1][0] * d, a[0][0] * d]]))
    }

    pub fn apply(&self, v: &Vec2) -> Vec2 {
        let a = &self.0;
        Vec2::new(
            int(a[0][0]) * &v.x + int(a[0][1]) * &v.y,
            int(a[1][0]) * &v.x + int(a[1][1]) * &v.y,
        )
    }

    pub fn apply_int(&self, v: [i64; 2]) -> [i64; 2] {
        let a = &self.0;
        [a[0][0] * v[0] + a[0][1] * v[1], a[1][0] * v[0] + a[1][1] * v[1]]
    }

    pub fn apply_f64(&self, v: [f64; 2]) -> [f64; 2] {
        let a = &self.0;
        [
            a[0][0] as f64 * v[0] + a[0][1] as f64 * v[1],
            a[1][0] as f64 * v[0] + a[1][1] as f64 * v[1],
        ]
    }
}

pub fn gcd_i64(a: i64, b: i64) -> i64 {
    a.abs().gcd(&b.abs())
}

pub fn sign(r: &Rational) -> i32 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}
