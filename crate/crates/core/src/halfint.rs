//! Exact half-integers, stored as twice their value.

use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub};

use crate::rat::{rat, Rat};

/// A value in (1/2)Z. `twice` holds 2x the represented number, so both
/// integers and half-odd-integers are exact and ordering is exact.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct HalfInt {
    twice: i64,
}

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt { twice: 0 };

    pub fn from_twice(twice: i64) -> Self {
        HalfInt { twice }
    }

    pub fn from_int(n: i64) -> Self {
        HalfInt { twice: 2 * n }
    }

    /// n + 1/2.
    pub fn half_odd(n: i64) -> Self {
        HalfInt { twice: 2 * n + 1 }
    }

    pub fn twice(self) -> i64 {
        self.twice
    }

    pub fn is_integral(self) -> bool {
        self.twice % 2 == 0
    }

    pub fn is_half_odd(self) -> bool {
        self.twice % 2 != 0
    }

    pub fn is_zero(self) -> bool {
        self.twice == 0
    }

    /// Integer value; panics on half-odd input.
    pub fn as_int(self) -> i64 {
        assert!(self.is_integral(), "not an integer: {self}");
        self.twice / 2
    }

    pub fn to_rat(self) -> Rat {
        rat(self.twice, 2)
    }

    pub fn abs(self) -> Self {
        HalfInt {
            twice: self.twice.abs(),
        }
    }

    pub fn is_positive(self) -> bool {
        self.twice > 0
    }

    pub fn is_negative(self) -> bool {
        self.twice < 0
    }

    /// Parse `"n"` or `"k/2"` (odd k).
    pub fn parse(s: &str) -> Result<HalfInt, String> {
        let s = s.trim();
        match s.split_once('/') {
            None => s
                .parse::<i64>()
                .map(HalfInt::from_int)
                .map_err(|_| format!("bad half-integer: {s:?}")),
            Some((p, "2")) => p
                .parse::<i64>()
                .map(HalfInt::from_twice)
                .map_err(|_| format!("bad half-integer: {s:?}")),
            Some(_) => Err(format!("half-integer denominator must be 2: {s:?}")),
        }
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt {
            twice: self.twice + rhs.twice,
        }
    }
}

impl AddAssign for HalfInt {
    fn add_assign(&mut self, rhs: HalfInt) {
        self.twice += rhs.twice;
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt {
            twice: self.twice - rhs.twice,
        }
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt { twice: -self.twice }
    }
}

/// Renders integers as `"n"` and half-odds as `"k/2"`.
impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integral() {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_and_display() {
        let a = HalfInt::half_odd(1); // 3/2
        let b = HalfInt::from_int(-2);
        assert_eq!((a + b).twice(), -1);
        assert_eq!(format!("{}", a + b), "-1/2");
        assert_eq!(format!("{}", b), "-2");
        assert!(a.is_half_odd());
        assert!((a + a).is_integral());
    }

    #[test]
    fn parse_roundtrip() {
        for s in ["0", "5", "-3", "1/2", "-7/2"] {
            let h = HalfInt::parse(s).unwrap();
            assert_eq!(format!("{h}"), s);
        }
        assert!(HalfInt::parse("1/3").is_err());
    }
}
