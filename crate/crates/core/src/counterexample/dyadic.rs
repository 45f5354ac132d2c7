//! Exact dyadic rationals `m / 2^e`.

use crate::path::PathValue;
use serde::Serialize;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Sub};

/// `numerator / 2^exponent` kept in lowest terms (odd numerator, or zero with exponent zero).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct DyadicRational {
    numerator: i64,
    exponent: u32,
}

impl DyadicRational {
    pub const ZERO: Self = Self { numerator: 0, exponent: 0 };
    pub const ONE: Self = Self { numerator: 1, exponent: 0 };

    pub fn new(numerator: i64, exponent: u32) -> Self {
        if numerator == 0 {
            return Self::ZERO;
        }
        let shift = numerator.trailing_zeros().min(exponent);
        Self { numerator: numerator >> shift, exponent: exponent - shift }
    }

    /// `2^{−e}`.
    pub fn power_of_half(e: u32) -> Self {
        Self { numerator: 1, exponent: e }
    }

    pub fn numerator(self) -> i64 {
        self.numerator
    }

    pub fn exponent(self) -> u32 {
        self.exponent
    }

    fn aligned(self, other: Self) -> (i128, i128, u32) {
        let e = self.exponent.max(other.exponent);
        ((self.numerator as i128) << (e - self.exponent), (other.numerator as i128) << (e - other.exponent), e)
    }

    fn from_wide(n: i128, e: u32) -> Self {
        if n == 0 {
            return Self::ZERO;
        }
        let shift = n.trailing_zeros().min(e);
        let n = n >> shift;
        Self { numerator: i64::try_from(n).expect("dyadic numerator overflow"), exponent: e - shift }
    }
}

impl Ord for DyadicRational {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.exponent == other.exponent {
            return self.numerator.cmp(&other.numerator);
        }
        let (a, b, _) = self.aligned(*other);
        a.cmp(&b)
    }
}

impl PartialOrd for DyadicRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Sub for DyadicRational {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        let (a, b, e) = self.aligned(rhs);
        Self::from_wide(a - b, e)
    }
}

impl Add for DyadicRational {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        let (a, b, e) = self.aligned(rhs);
        Self::from_wide(a + b, e)
    }
}

impl PathValue for DyadicRational {
    fn zero() -> Self {
        Self::ZERO
    }

    fn to_f64(self) -> f64 {
        self.numerator as f64 / 2f64.powi(self.exponent as i32)
    }
}

impl fmt::Display for DyadicRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponent == 0 {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "{}/2^{}", self.numerator, self.exponent)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        assert_eq!(DyadicRational::new(4, 3), DyadicRational::new(1, 1));
        assert_eq!(DyadicRational::new(0, 5), DyadicRational::ZERO);
        assert_eq!(DyadicRational::new(6, 0).exponent(), 0);
        assert_eq!(DyadicRational::new(6, 2), DyadicRational::new(3, 1));
    }

    #[test]
    fn arithmetic_and_order() {
        let a = DyadicRational::new(3, 2);
        let b = DyadicRational::new(1, 1);
        assert_eq!(a - b, DyadicRational::new(1, 2));
        assert_eq!(b - a, DyadicRational::new(-1, 2));
        assert_eq!(a + b, DyadicRational::new(5, 2));
        assert!(b < a && a < DyadicRational::ONE);
        assert_eq!(a.abs_diff(DyadicRational::ONE), DyadicRational::new(1, 2));
        assert_eq!(a.to_f64(), 0.75);
        assert_eq!(a.to_string(), "3/2^2");
    }
}
