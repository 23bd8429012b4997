use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Serialize, Serializer};

/// An exact element of ½ℤ, stored as its double.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfInt(i64);

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt(0);

    pub const fn from_doubled(doubled: i64) -> Self {
        HalfInt(doubled)
    }

    pub const fn from_int(value: i64) -> Self {
        HalfInt(2 * value)
    }

    pub const fn doubled(self) -> i64 {
        self.0
    }

    pub fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    pub fn abs(self) -> Self {
        HalfInt(self.0.abs())
    }

    /// Integer value, if this is an integer.
    pub fn to_int(self) -> Option<i64> {
        self.is_integer().then_some(self.0 / 2)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl Serialize for HalfInt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 + rhs.0)
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 - rhs.0)
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt(-self.0)
    }
}

/// Maslov grading and Alexander level of a generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Bigrading {
    pub maslov: i64,
    pub alexander: HalfInt,
}

impl Bigrading {
    pub fn new(maslov: i64, alexander: HalfInt) -> Self {
        Bigrading { maslov, alexander }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_and_serialize() {
        assert_eq!(HalfInt::from_int(3).to_string(), "3");
        assert_eq!(HalfInt::from_doubled(-1).to_string(), "-1/2");
        assert_eq!(
            serde_json::to_string(&HalfInt::from_doubled(5)).unwrap(),
            "\"5/2\""
        );
    }

    #[test]
    fn arithmetic() {
        let a = HalfInt::from_doubled(3);
        let b = HalfInt::from_int(1);
        assert_eq!(a - b, HalfInt::from_doubled(1));
        assert_eq!((-a).abs(), a);
        assert_eq!((a + b).to_int(), None);
        assert_eq!((a + HalfInt::from_doubled(1)).to_int(), Some(2));
    }
}
