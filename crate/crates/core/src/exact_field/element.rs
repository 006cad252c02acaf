//! Elements of the tower field `Q[θ_k]`.
//!
//! Internally an element is a sparse combination `c_0 + Σ_{i≥1} c_i C_i(θ_k)` where
//! `C_i(θ_k) = 2cos(iπ / 2^(k+1))`. The identities
//!
//! ```text
//! C_i C_j = C_{i+j} + C_{|i-j|}      C_0 = 2
//! C_{N+i} = -C_{N-i}                 C_N = 0,   N = 2^k
//! C_i(θ_j) = C_{i·2^(k-j)}(θ_k)
//! ```
//!
//! make reduction modulo `M_k`, lifting and conjugation pure index arithmetic.
//! The power-basis coefficients of `θ_k^i` are available through
//! [`FieldElement::power_coeffs`].

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::rational::Rational;
use super::ratpoly;
use super::tower::{check_level, TowerLevel, DEFAULT_MAX_LEVEL};
use crate::error::{Error, Result};

#[derive(Clone)]
pub struct FieldElement {
    level: u32,
    /// index 0 is the constant term; index i ≥ 1 multiplies `C_i(θ_level)`.
    terms: BTreeMap<usize, Rational>,
}

/// Where `C_i(θ_k)` lands after reduction: zero, `±2` (index 0) or `±C_j` with `0 < j < N`.
fn reduce_index(i: usize, n: usize) -> Option<(bool, usize)> {
    let period = 4 * n;
    let mut i = i % period;
    if i > 2 * n {
        i = period - i;
    }
    if i == n {
        None
    } else if i > n {
        Some((true, 2 * n - i))
    } else {
        Some((false, i))
    }
}

fn accumulate(terms: &mut BTreeMap<usize, Rational>, n: usize, index: usize, coeff: Rational) {
    if coeff.is_zero() {
        return;
    }
    let Some((negate, j)) = reduce_index(index, n) else {
        return;
    };
    let (slot, value) = if j == 0 {
        (0, &coeff + &coeff)
    } else {
        (j, coeff)
    };
    let value = if negate { -value } else { value };
    let entry = terms.entry(slot).or_insert_with(Rational::zero);
    *entry += &value;
    if entry.is_zero() {
        terms.remove(&slot);
    }
}

fn add_constant(terms: &mut BTreeMap<usize, Rational>, c: Rational) {
    let entry = terms.entry(0).or_insert_with(Rational::zero);
    *entry += &c;
    if entry.is_zero() {
        terms.remove(&0);
    }
}

impl FieldElement {
    pub fn zero() -> Self {
        FieldElement { level: 0, terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_rational(r: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !r.is_zero() {
            terms.insert(0, r);
        }
        FieldElement { level: 0, terms }
    }

    pub fn from_integer(v: i64) -> Self {
        Self::from_rational(Rational::from(v))
    }

    pub fn zero_at(level: u32) -> Result<Self> {
        check_level(level, DEFAULT_MAX_LEVEL)?;
        Ok(FieldElement { level, terms: BTreeMap::new() })
    }

    /// `θ_k` itself.
    pub fn generator(level: u32) -> Result<Self> {
        Self::cos_term(level, 1, Rational::one())
    }

    /// `coeff · C_index(θ_level) = coeff · 2cos(index·π / 2^(level+1))`; any index is accepted.
    pub fn cos_term(level: u32, index: usize, coeff: Rational) -> Result<Self> {
        check_level(level, DEFAULT_MAX_LEVEL)?;
        let mut terms = BTreeMap::new();
        accumulate(&mut terms, 1usize << level, index, coeff);
        Ok(FieldElement { level, terms })
    }

    /// Inverse of [`FieldElement::cos_terms`]: index 0 is the plain constant, any other
    /// index `i` contributes `c · C_i(θ_level)`.
    pub fn from_cos_terms(level: u32, terms: impl IntoIterator<Item = (usize, Rational)>) -> Result<Self> {
        check_level(level, DEFAULT_MAX_LEVEL)?;
        let mut out = BTreeMap::new();
        for (i, c) in terms {
            if i == 0 {
                add_constant(&mut out, c);
            } else {
                accumulate(&mut out, 1usize << level, i, c);
            }
        }
        Ok(FieldElement { level, terms: out })
    }

    /// Builds an element from its power-basis coefficients; `coeffs.len()` must be `2^level`.
    pub fn from_power_coeffs(level: u32, coeffs: &[Rational]) -> Result<Self> {
        check_level(level, DEFAULT_MAX_LEVEL)?;
        let n = 1usize << level;
        if coeffs.len() != n {
            return Err(Error::LengthMismatch { expected: n, got: coeffs.len() });
        }
        let mut terms = BTreeMap::new();
        for (i, c) in ratpoly::power_to_cos(coeffs) {
            if i == 0 {
                add_constant(&mut terms, c);
            } else {
                accumulate(&mut terms, n, i, c);
            }
        }
        Ok(FieldElement { level, terms })
    }

    /// Builds an element from a power-basis polynomial of any degree, reducing modulo `M_level`.
    pub fn from_power_poly(level: u32, coeffs: &[Rational]) -> Result<Self> {
        let n = 1usize << level;
        if coeffs.len() <= n {
            let mut padded = coeffs.to_vec();
            padded.resize(n, Rational::zero());
            return Self::from_power_coeffs(level, &padded);
        }
        let modulus = modulus_rationals(level)?;
        let (_, mut rem) = ratpoly::divmod(coeffs, &modulus)?;
        rem.resize(n, Rational::zero());
        Self::from_power_coeffs(level, &rem)
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    /// Coefficient of `θ_k^i` at position `i`, exactly `2^level` entries.
    pub fn power_coeffs(&self) -> Vec<Rational> {
        ratpoly::cos_to_power(self.terms.iter().map(|(i, c)| (*i, c)), 1usize << self.level)
    }

    /// Nonzero cosine-basis terms `(index, coefficient)`; index 0 is the constant.
    pub fn cos_terms(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.terms.iter().map(|(i, c)| (*i, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&0).cloned(),
            _ => None,
        }
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().is_some_and(|r| r.is_one())
    }

    pub fn is_minus_one(&self) -> bool {
        self.as_rational().is_some_and(|r| (-r).is_one())
    }

    /// Lowest level whose field contains this element.
    pub fn minimal_level(&self) -> u32 {
        let shift = self
            .terms
            .keys()
            .filter(|&&i| i != 0)
            .map(|i| i.trailing_zeros())
            .min();
        match shift {
            None => 0,
            Some(tz) => self.level - tz.min(self.level),
        }
    }

    /// Re-expresses the element in a higher level of the tower.
    pub fn lift(&self, target: u32) -> Result<Self> {
        if target < self.level {
            return Err(Error::LiftDown { from: self.level, to: target });
        }
        check_level(target, DEFAULT_MAX_LEVEL)?;
        let factor = 1usize << (target - self.level);
        let terms = self.terms.iter().map(|(i, c)| (i * factor, c.clone())).collect();
        Ok(FieldElement { level: target, terms })
    }

    /// Moves the element to its minimal level.
    pub fn demote(&self) -> Self {
        let target = self.minimal_level();
        let factor = 1usize << (self.level - target);
        let terms = self.terms.iter().map(|(i, c)| (i / factor, c.clone())).collect();
        FieldElement { level: target, terms }
    }

    fn same_level(&self, other: &Self) -> Result<()> {
        if self.level != other.level {
            return Err(Error::LevelMismatch { left: self.level, right: other.level });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_level(other)?;
        Ok(self.add_unchecked(other, false))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.same_level(other)?;
        Ok(self.add_unchecked(other, true))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same_level(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.same_level(other)?;
        Ok(self.mul_unchecked(&other.inverse()?))
    }

    fn add_unchecked(&self, other: &Self, subtract: bool) -> Self {
        let mut terms = self.terms.clone();
        for (i, c) in &other.terms {
            let entry = terms.entry(*i).or_insert_with(Rational::zero);
            if subtract {
                *entry -= c;
            } else {
                *entry += c;
            }
            if entry.is_zero() {
                terms.remove(i);
            }
        }
        FieldElement { level: self.level, terms }
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let n = 1usize << self.level;
        let mut terms = BTreeMap::new();
        for (&i, a) in &self.terms {
            for (&j, b) in &other.terms {
                let ab = a * b;
                match (i, j) {
                    (0, 0) => add_constant(&mut terms, ab),
                    (0, k) | (k, 0) => accumulate(&mut terms, n, k, ab),
                    _ => {
                        accumulate(&mut terms, n, i + j, ab.clone());
                        accumulate(&mut terms, n, i.abs_diff(j), ab);
                    }
                }
            }
        }
        FieldElement { level: self.level, terms }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return FieldElement { level: self.level, terms: BTreeMap::new() };
        }
        let terms = self.terms.iter().map(|(i, c)| (*i, c * r)).collect();
        FieldElement { level: self.level, terms }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm in `Q[x] / M_k`.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            return FieldElement::from_rational(r.recip()?).lift(self.level);
        }
        let modulus = modulus_rationals(self.level)?;
        let inv = ratpoly::inverse_mod(&self.power_coeffs(), &modulus)?;
        Self::from_power_poly(self.level, &inv)
    }

    pub fn checked_pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = FieldElement::one().lift(self.level).expect("level already validated");
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            base = base.mul_unchecked(&base);
            e >>= 1;
        }
        acc
    }

    /// Replaces `θ_k` by `image` (an element of the same level) and reduces.
    pub fn substitute(&self, image: &Self) -> Result<Self> {
        self.same_level(image)?;
        let n = 1usize << self.level;
        // ±C_s images map C_i to (±1)^i C_{is} directly.
        if let Some((s, negate)) = image.single_unit_cos_term() {
            let mut terms = BTreeMap::new();
            for (&i, c) in &self.terms {
                let c = if negate && i % 2 == 1 { -c } else { c.clone() };
                if i == 0 {
                    add_constant(&mut terms, c);
                } else {
                    accumulate(&mut terms, n, i * s, c);
                }
            }
            return Ok(FieldElement { level: self.level, terms });
        }
        Ok(self.substitute_by_recurrence(image))
    }

    /// `C_i(y)` by `C_i = y C_{i-1} - C_{i-2}`; valid for any image.
    pub(crate) fn substitute_by_recurrence(&self, image: &Self) -> Self {
        let top = self.terms.keys().next_back().copied().unwrap_or(0);
        let mut out = FieldElement { level: self.level, terms: BTreeMap::new() };
        if let Some(c) = self.terms.get(&0) {
            out.terms.insert(0, c.clone());
        }
        let two = FieldElement::from_integer(2).lift(self.level).expect("level already validated");
        let mut prev = two;
        let mut cur = image.clone();
        for i in 1..=top {
            if let Some(c) = self.terms.get(&i) {
                out = out.add_unchecked(&cur.scale(c), false);
            }
            let next = image.mul_unchecked(&cur).add_unchecked(&prev, true);
            prev = std::mem::replace(&mut cur, next);
        }
        out
    }

    /// `Some((s, negated))` when the element is exactly `±C_s(θ)` with `s ≥ 1`.
    fn single_unit_cos_term(&self) -> Option<(usize, bool)> {
        if self.terms.len() != 1 {
            return None;
        }
        let (&i, c) = self.terms.iter().next()?;
        if i == 0 {
            return None;
        }
        if c.is_one() {
            Some((i, false))
        } else if (-c).is_one() {
            Some((i, true))
        } else {
            None
        }
    }

    /// The real embedding `Σ c_i θ_k^i` evaluated in floating point.
    pub fn real_value(&self) -> f64 {
        let denom = f64::from(2u32).powi(self.level as i32 + 1);
        self.terms
            .iter()
            .map(|(&i, c)| {
                if i == 0 {
                    c.to_f64()
                } else {
                    c.to_f64() * 2.0 * (std::f64::consts::PI * i as f64 / denom).cos()
                }
            })
            .sum()
    }
}

fn modulus_rationals(level: u32) -> Result<Vec<Rational>> {
    Ok(TowerLevel::new(level)?.modulus().iter().cloned().map(Rational::from).collect())
}

fn common_level<'a>(a: &'a FieldElement, b: &'a FieldElement) -> (std::borrow::Cow<'a, FieldElement>, std::borrow::Cow<'a, FieldElement>) {
    use std::borrow::Cow;
    let level = a.level.max(b.level);
    let lift = |e: &'a FieldElement| {
        if e.level == level {
            Cow::Borrowed(e)
        } else {
            Cow::Owned(e.lift(level).expect("lifting to an existing level cannot fail"))
        }
    };
    (lift(a), lift(b))
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        if self.level == other.level {
            return self.terms == other.terms;
        }
        let (a, b) = common_level(self, other);
        a.terms == b.terms
    }
}

impl Eq for FieldElement {}

impl Add<&FieldElement> for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        let (a, b) = common_level(self, rhs);
        a.add_unchecked(&b, false)
    }
}

impl Sub<&FieldElement> for &FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        let (a, b) = common_level(self, rhs);
        a.add_unchecked(&b, true)
    }
}

impl Mul<&FieldElement> for &FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        if let Some(r) = rhs.as_rational() {
            return self.scale(&r).lift(self.level.max(rhs.level)).expect("existing level");
        }
        if let Some(r) = self.as_rational() {
            return rhs.scale(&r).lift(self.level.max(rhs.level)).expect("existing level");
        }
        let (a, b) = common_level(self, rhs);
        a.mul_unchecked(&b)
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement { level: self.level, terms: self.terms.iter().map(|(i, c)| (*i, -c)).collect() }
    }
}

macro_rules! owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$method(&rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

impl From<Rational> for FieldElement {
    fn from(r: Rational) -> Self {
        FieldElement::from_rational(r)
    }
}

/// Power-basis polynomial in `θk`, e.g. `-2 + θ2^2`.
impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.as_rational() {
            return write!(f, "{r}");
        }
        let var = format!("θ{}", self.level);
        let mut first = true;
        for (i, c) in self.power_coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            let mag = c.abs();
            if first {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { '-' } else { '+' })?;
            }
            first = false;
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => write!(f, "{var}")?,
                (_, false) => write!(f, "{mag}*{var}")?,
            }
            if i > 1 {
                write!(f, "^{i}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldElement[L{}]({})", self.level, self)
    }
}
