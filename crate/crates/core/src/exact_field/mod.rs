//! Exact arithmetic: rationals and the real field tower `Q[2cos(π / 2^(k+1))]`.

mod dyadic;
mod element;
mod rational;
mod ratpoly;
mod surd;
mod tower;

pub use dyadic::DyadicRational;
pub use element::FieldElement;
pub use rational::Rational;
pub use surd::surd_two_cos;
pub use tower::{check_level, dickson_coeffs, tower_level, TowerLevel, DEFAULT_MAX_LEVEL};

use num_traits::ToPrimitive;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn rat_arith(a: &Rational, b: &Rational, op: ArithOp) -> Result<Rational> {
    Ok(match op {
        ArithOp::Add => a + b,
        ArithOp::Sub => a - b,
        ArithOp::Mul => a * b,
        ArithOp::Div => a.checked_div(b)?,
    })
}

/// Field operation on two elements of the same level.
pub fn fe_arith(a: &FieldElement, b: &FieldElement, op: ArithOp) -> Result<FieldElement> {
    match op {
        ArithOp::Add => a.checked_add(b),
        ArithOp::Sub => a.checked_sub(b),
        ArithOp::Mul => a.checked_mul(b),
        ArithOp::Div => a.checked_div(b),
    }
}

/// `2cos(rπ)` at level `j - 1`, the smallest level containing it, for `r = m / 2^j`.
pub fn two_cos(r: DyadicRational) -> Result<FieldElement> {
    two_cos_angle(r.numerator() as i64, r.log2_denominator())
}

/// `2cos(num·π / 2^log2_den)` for any integer numerator, at its smallest level.
///
/// Angles with denominator 1 give `±2` at level 0.
pub fn two_cos_angle(num: i64, log2_den: u32) -> Result<FieldElement> {
    let (mut num, mut exp) = (num.unsigned_abs(), log2_den);
    while exp > 0 && num % 2 == 0 {
        num /= 2;
        exp -= 1;
    }
    if exp == 0 {
        return Ok(FieldElement::from_integer(if num % 2 == 0 { 2 } else { -2 }));
    }
    // 2cos(num π / 2^exp) = C_num(θ_{exp-1})
    let level = exp - 1;
    let period = 1u64 << (exp + 1);
    FieldElement::cos_term(level, (num % period) as usize, Rational::one())
}

/// `2cos(aπ)` for a rational angle `a` whose denominator is a power of two.
pub fn two_cos_rational(angle: &Rational) -> Result<FieldElement> {
    let den = angle
        .denominator()
        .to_u64()
        .filter(|d| d.is_power_of_two())
        .ok_or_else(|| Error::NotDyadic(angle.to_string()))?;
    let folded: num_bigint::BigInt = angle.numerator() % (num_bigint::BigInt::from(den) * 2);
    let num = folded
        .to_i64()
        .ok_or_else(|| Error::NotDyadic(angle.to_string()))?;
    two_cos_angle(num, den.trailing_zeros())
}
