use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A skew parameter `m / 2^j` with `m` odd and `0 < m / 2^j < 1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct DyadicRational {
    numerator: u64,
    log2_denominator: u32,
}

impl DyadicRational {
    pub const HALF: DyadicRational = DyadicRational { numerator: 1, log2_denominator: 1 };

    /// Builds `numerator / 2^log2_denominator`, reducing even numerators first.
    pub fn new(numerator: u64, log2_denominator: u32) -> Result<Self> {
        if log2_denominator > 62 {
            return Err(Error::NotDyadic(format!("{numerator}/2^{log2_denominator} (denominator too large)")));
        }
        let (mut num, mut exp) = (numerator, log2_denominator);
        while num != 0 && num % 2 == 0 && exp > 0 {
            num /= 2;
            exp -= 1;
        }
        if num == 0 || exp == 0 || num >= (1u64 << exp) {
            return Err(Error::NotDyadic(format!("{numerator}/2^{log2_denominator}")));
        }
        Ok(DyadicRational { numerator: num, log2_denominator: exp })
    }

    pub fn numerator(&self) -> u64 {
        self.numerator
    }

    pub fn log2_denominator(&self) -> u32 {
        self.log2_denominator
    }

    pub fn denominator(&self) -> u64 {
        1u64 << self.log2_denominator
    }

    /// `r / 2`.
    pub fn half(&self) -> Result<Self> {
        DyadicRational::new(self.numerator, self.log2_denominator + 1)
    }

    /// `1 - r / 2`, renormalized to an odd numerator.
    pub fn complement_half(&self) -> Result<Self> {
        let den = self.denominator() * 2;
        DyadicRational::new(den - self.numerator, self.log2_denominator + 1)
    }

    pub fn to_f64(&self) -> f64 {
        self.numerator as f64 / self.denominator() as f64
    }
}

impl Ord for DyadicRational {
    fn cmp(&self, other: &Self) -> Ordering {
        let shift = self.log2_denominator.max(other.log2_denominator);
        let a = (self.numerator as u128) << (shift - self.log2_denominator);
        let b = (other.numerator as u128) << (shift - other.log2_denominator);
        a.cmp(&b)
    }
}

impl PartialOrd for DyadicRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for DyadicRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numerator, self.denominator())
    }
}

impl fmt::Debug for DyadicRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Accepts `m/2^j` and `m/d` with `d` a power of two.
impl FromStr for DyadicRational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::NotDyadic(s.to_string());
        let (num, den) = s.trim().split_once('/').ok_or_else(bad)?;
        let numerator: u64 = num.trim().parse().map_err(|_| bad())?;
        let den = den.trim();
        let log2 = if let Some(exp) = den.strip_prefix("2^") {
            exp.parse::<u32>().map_err(|_| bad())?
        } else {
            let d: u64 = den.parse().map_err(|_| bad())?;
            if d == 0 || !d.is_power_of_two() {
                return Err(bad());
            }
            d.trailing_zeros()
        };
        DyadicRational::new(numerator, log2)
    }
}
