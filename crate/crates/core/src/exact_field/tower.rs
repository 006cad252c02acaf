//! Levels of the tower `Q ⊂ Q[θ_1] ⊂ Q[θ_2] ⊂ …` with `θ_k = 2cos(π / 2^(k+1))`.
//!
//! Level `k` is presented as `Q[x] / M_k(x)` where `M_k(x) = 2 T_{2^k}(x / 2)`.
//! `M_k` is monic with integer coefficients and satisfies `M_k = M_{k-1}^2 - 2`.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Highest level an element may be created at unless a caller asks for another cap.
pub const DEFAULT_MAX_LEVEL: u32 = 16;

/// Levels above this are never representable: `2^level` must index a `Vec`.
const HARD_MAX_LEVEL: u32 = 30;

pub fn check_level(k: u32, cap: u32) -> Result<()> {
    let cap = cap.min(HARD_MAX_LEVEL);
    if k > cap {
        return Err(Error::LevelCap { requested: k, cap });
    }
    Ok(())
}

/// Power-basis coefficients (lowest degree first) of `C_n(x) = 2 T_n(x / 2)`.
///
/// `C_n(2cos φ) = 2cos(nφ)`; `C_0 = 2`, `C_1 = x`, `C_n = x C_{n-1} - C_{n-2}`.
pub fn dickson_coeffs(n: usize) -> Vec<BigInt> {
    if n == 0 {
        return vec![BigInt::from(2)];
    }
    let mut out = vec![BigInt::zero(); n + 1];
    // coefficient of x^(n-2i) is (-1)^i * n/(n-i) * binom(n-i, i)
    let mut binom = BigInt::from(1);
    for i in 0..=n / 2 {
        let mut c: BigInt = &binom * BigInt::from(n) / BigInt::from(n - i);
        if i % 2 == 1 {
            c = -c;
        }
        out[n - 2 * i] = c;
        if 2 * i + 2 <= n {
            binom = binom * BigInt::from((n - 2 * i) * (n - 2 * i - 1)) / BigInt::from((i + 1) * (n - i));
        }
    }
    out
}

/// One level of the tower together with its defining modulus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerLevel {
    k: u32,
    modulus: Vec<BigInt>,
}

impl TowerLevel {
    pub fn new(k: u32) -> Result<Self> {
        Self::with_cap(k, DEFAULT_MAX_LEVEL)
    }

    pub fn with_cap(k: u32, cap: u32) -> Result<Self> {
        check_level(k, cap)?;
        let level = TowerLevel { k, modulus: dickson_coeffs(1usize << k) };
        // Horner in f64 is only trustworthy while the coefficients stay small.
        if k <= 4 {
            let theta = level.generator_value();
            let (residual, scale) = level.modulus.iter().rev().fold((0.0f64, 0.0f64), |(acc, mag), c| {
                let c = c.to_f64().unwrap_or(f64::NAN);
                (acc * theta + c, mag * theta + c.abs())
            });
            if residual.abs() > 1e-12 * scale.max(1.0) {
                return Err(Error::InvalidArgument(format!(
                    "θ_{k} is not a root of its modulus (residual {residual:e})"
                )));
            }
        }
        Ok(level)
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn degree(&self) -> usize {
        1usize << self.k
    }

    /// Integer coefficients of the monic modulus, lowest degree first.
    pub fn modulus(&self) -> &[BigInt] {
        &self.modulus
    }

    /// `θ_k = 2cos(π / 2^(k+1))`.
    pub fn generator_value(&self) -> f64 {
        2.0 * (std::f64::consts::PI / f64::from(2u32).powi(self.k as i32 + 1)).cos()
    }
}

/// `tower_level(k)` with the default cap.
pub fn tower_level(k: u32) -> Result<TowerLevel> {
    TowerLevel::new(k)
}
