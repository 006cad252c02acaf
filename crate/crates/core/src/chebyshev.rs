//! Dense polynomials over the tower, the Chebyshev families `T`, `U`, `V`, and the
//! factorization `2T_{2^k} - 2cos(rπ) = (2T_{2^(k-1)} - 2cos(rπ/2)) (2T_{2^(k-1)} - 2cos(π(1 - r/2)))`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact_field::{two_cos, two_cos_rational, DyadicRational, FieldElement, Rational, TowerLevel};

/// A polynomial with tower-field coefficients, lowest degree first, with no trailing zeros.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Poly {
    coeffs: Vec<FieldElement>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(FieldElement::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: FieldElement) -> Self {
        Poly::new(vec![c])
    }

    /// `x`
    pub fn x() -> Self {
        Poly::new(vec![FieldElement::zero(), FieldElement::one()])
    }

    pub fn from_integers(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| FieldElement::from_integer(c)).collect())
    }

    pub fn from_bigints(coeffs: &[BigInt]) -> Self {
        Poly::new(coeffs.iter().map(|c| FieldElement::from_rational(Rational::from(c.clone()))).collect())
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).cloned().unwrap_or_else(FieldElement::zero)
    }

    /// Highest tower level among the coefficients.
    pub fn level(&self) -> u32 {
        self.coeffs.iter().map(FieldElement::level).max().unwrap_or(0)
    }

    pub fn eval(&self, x: &FieldElement) -> FieldElement {
        self.coeffs.iter().rev().fold(FieldElement::zero(), |acc, c| &(&acc * x) + c)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c.real_value())
    }

    pub fn scale(&self, c: &FieldElement) -> Poly {
        Poly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// `(quotient, remainder)` with `deg(remainder) < deg(divisor)`.
    pub fn divmod(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        let db = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = divisor.coeffs[db].inverse()?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![FieldElement::zero(); self.coeffs.len().saturating_sub(db)];
        while rem.len() > db {
            let top = rem.len() - 1;
            let c = &rem[top] * &lead_inv;
            let shift = top - db;
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[shift + j] = &rem[shift + j] - &(&c * d);
            }
            quot[shift] = c;
            while rem.last().is_some_and(FieldElement::is_zero) {
                rem.pop();
            }
            if rem.len() > top {
                // leading term failed to cancel; cannot happen with an exact inverse
                return Err(Error::InvalidArgument("polynomial division did not converge".into()));
            }
        }
        Ok((Poly::new(quot), Poly::new(rem)))
    }

    fn zip_with(&self, other: &Poly, f: impl Fn(&FieldElement, &FieldElement) -> FieldElement) -> Poly {
        let len = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..len).map(|i| f(&self.coeff(i), &other.coeff(i))).collect())
    }

    /// Coefficient-form rendering, e.g. `4x^2 - 2` or `(-2 + θ2^2)x + 1`.
    pub fn to_coefficient_string(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (negative, body) = match c.as_rational() {
                Some(r) => {
                    let mag = r.abs();
                    let body = if mag.is_one() && i > 0 { String::new() } else { mag.to_string() };
                    (r.is_negative(), body)
                }
                None => (false, format!("({})", c.to_surd_string())),
            };
            match (out.is_empty(), negative) {
                (true, true) => out.push('-'),
                (true, false) => {}
                (false, true) => out.push_str(" - "),
                (false, false) => out.push_str(" + "),
            }
            out.push_str(&body);
            match i {
                0 => {}
                1 => out.push('x'),
                _ => out.push_str(&format!("x^{i}")),
            }
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_coefficient_string())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![FieldElement::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in rhs.coeffs.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Poly::new(out)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
}

pub fn poly_arith(a: &Poly, b: &Poly, op: PolyOp) -> Poly {
    match op {
        PolyOp::Add => a + b,
        PolyOp::Sub => a - b,
        PolyOp::Mul => a * b,
    }
}

/// First, second and third kind.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ChebKind {
    T,
    U,
    V,
}

impl ChebKind {
    fn first_two(self) -> ([i64; 1], [i64; 2]) {
        match self {
            ChebKind::T => ([1], [0, 1]),
            ChebKind::U => ([1], [0, 2]),
            ChebKind::V => ([1], [-1, 2]),
        }
    }
}

/// Integer coefficients of `P_n`, built by `P_n = 2x P_{n-1} - P_{n-2}`.
pub fn cheb_integer_coeffs(kind: ChebKind, n: usize) -> Vec<BigInt> {
    let (p0, p1) = kind.first_two();
    let mut prev: Vec<BigInt> = p0.iter().map(|&c| BigInt::from(c)).collect();
    if n == 0 {
        return prev;
    }
    let mut cur: Vec<BigInt> = p1.iter().map(|&c| BigInt::from(c)).collect();
    for _ in 1..n {
        let mut next = vec![BigInt::zero(); cur.len() + 1];
        for (i, c) in cur.iter().enumerate() {
            next[i + 1] += c * 2;
        }
        for (i, c) in prev.iter().enumerate() {
            next[i] -= c;
        }
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

pub fn cheb(kind: ChebKind, n: usize) -> Poly {
    Poly::from_bigints(&cheb_integer_coeffs(kind, n))
}

/// `P_0(x), …, P_{count-1}(x)` evaluated exactly by the three-term recurrence.
pub fn cheb_values(kind: ChebKind, count: usize, x: &FieldElement) -> Vec<FieldElement> {
    let (p0, p1) = kind.first_two();
    let mut out = Vec::with_capacity(count);
    let two_x = x * &FieldElement::from_integer(2);
    let first = FieldElement::from_integer(p0[0]);
    let second = &(&FieldElement::from_integer(p1[1]) * x) + &FieldElement::from_integer(p1[0]);
    for i in 0..count {
        let v = match i {
            0 => first.clone(),
            1 => second.clone(),
            _ => &(&two_x * &out[i - 1]) - &out[i - 2],
        };
        out.push(v);
    }
    out
}

/// `2T_n(x) - c`. When `angle` is known the constant is `2cos(angle·π)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChebFactor {
    pub n: usize,
    pub constant: FieldElement,
    pub angle: Option<Rational>,
}

impl ChebFactor {
    pub fn skewed(n: usize, r: DyadicRational) -> Result<Self> {
        Ok(ChebFactor {
            n,
            constant: two_cos(r)?,
            angle: Some(Rational::new(r.numerator(), r.denominator())?),
        })
    }

    pub fn poly(&self) -> Poly {
        let base = cheb(ChebKind::T, self.n).scale(&FieldElement::from_integer(2));
        &base - &Poly::constant(self.constant.clone())
    }

    /// `2T_n(x) - √2`, `2T_n(x) + √2`, or `2T_n(x)` when the constant vanishes.
    pub fn symbolic(&self) -> String {
        let head = format!("2T_{}(x)", self.n);
        if self.constant.is_zero() {
            return head;
        }
        let s = self.constant.to_surd_string();
        let single_term = self.constant.cos_terms().count() == 1;
        match s.strip_prefix('-') {
            Some(rest) if single_term => format!("{head} + {rest}"),
            _ if single_term => format!("{head} - {s}"),
            _ => format!("{head} - ({s})"),
        }
    }

    /// `2T_n(x) - 2cos(aπ)`, the angle form.
    pub fn angle_form(&self) -> String {
        match &self.angle {
            Some(a) => format!("2T_{}(x) - 2cos({}π)", self.n, a),
            None => self.symbolic(),
        }
    }
}

impl fmt::Display for ChebFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.symbolic())
    }
}

/// One application of the recursive factorization to `2T_{2^k}(x) - c`, `c = 2cos(rπ)`.
///
/// The second factor stores `-2cos(rπ/2)` directly; its `angle` keeps the `1 - r/2` form.
pub fn factor_step(k: u32, c: &FieldElement, r: DyadicRational) -> Result<(ChebFactor, ChebFactor)> {
    if k == 0 {
        return Err(Error::InvalidArgument("2T_1 - c is linear and does not factor further".into()));
    }
    if *c != two_cos(r)? {
        return Err(Error::InvalidArgument(format!("constant is not 2cos({r}π)")));
    }
    let m = 1usize << (k - 1);
    let half = r.half()?;
    let a = two_cos(half)?;
    let first = ChebFactor { n: m, constant: a.clone(), angle: Some(Rational::new(half.numerator(), half.denominator())?) };
    let comp = r.complement_half()?;
    let second = ChebFactor {
        n: m,
        constant: -&a,
        angle: Some(Rational::new(comp.numerator(), comp.denominator())?),
    };
    Ok((first, second))
}

/// One row of the factorization display: the field the factors live in and the factors.
#[derive(Clone, Debug)]
pub struct TowerStep {
    pub level: u32,
    pub factors: Vec<ChebFactor>,
}

impl TowerStep {
    /// `Q`, `Q[√2]`, `Q[√(2+√2)]`, …
    pub fn field_name(&self) -> String {
        field_name(self.level)
    }
}

pub fn field_name(level: u32) -> String {
    if level == 0 {
        return "Q".into();
    }
    let angle = Rational::new(1, 1u64 << (level + 1)).expect("nonzero");
    format!("Q[{}]", crate::exact_field::surd_two_cos(&angle))
}

/// Stepwise factorization of `2T_{2^k}(x) - 2cos(rπ)` down to linear factors.
pub fn tower_factorization(k: u32, r: DyadicRational) -> Result<Vec<TowerStep>> {
    let mut skews = vec![r];
    let top = ChebFactor::skewed(1 << k, r)?;
    let mut steps = vec![TowerStep { level: top.constant.minimal_level(), factors: vec![top] }];
    for depth in 1..=k {
        let n = 1usize << (k - depth);
        let mut next = Vec::with_capacity(skews.len() * 2);
        for s in &skews {
            next.push(s.half()?);
            next.push(s.complement_half()?);
        }
        let factors = next.iter().map(|&s| ChebFactor::skewed(n, s)).collect::<Result<Vec<_>>>()?;
        let level = factors.iter().map(|f| f.constant.minimal_level()).max().unwrap_or(0);
        steps.push(TowerStep { level, factors });
        skews = next;
    }
    Ok(steps)
}

/// Which polynomial algebra's zeros to list.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RootFamily {
    /// zeros of `2T_n(x) - 2cos(rπ)`
    Dct4Skew(DyadicRational),
    /// zeros of `(x - 1) U_{n-1}(x)`
    Dct2,
}

fn require_power_of_two(n: usize) -> Result<()> {
    if n == 0 || !n.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(n));
    }
    Ok(())
}

/// Angles `θ / π ∈ [0, 1)` of the zeros `cos θ`, in increasing order.
pub fn root_angles(family: RootFamily, n: usize) -> Result<Vec<Rational>> {
    require_power_of_two(n)?;
    let n_q = Rational::from(n as i64);
    Ok(match family {
        RootFamily::Dct4Skew(r) => {
            let r = Rational::new(r.numerator(), r.denominator())?;
            // nθ/π runs through r, 2 - r, 2 + r, 4 - r, …
            (0..n)
                .map(|i| {
                    let base = Rational::from(i as i64);
                    let t = if i % 2 == 0 { &base + &r } else { &(&base + &Rational::one()) - &r };
                    &t / &n_q
                })
                .collect()
        }
        RootFamily::Dct2 => (0..n).map(|i| &Rational::from(i as i64) / &n_q).collect(),
    })
}

/// The zeros themselves as tower elements, `cos θ = 2cos θ / 2`.
pub fn roots_of(family: RootFamily, n: usize) -> Result<Vec<FieldElement>> {
    let half = Rational::new(1, 2)?;
    root_angles(family, n)?
        .iter()
        .map(|a| Ok(two_cos_rational(a)?.scale(&half)))
        .collect()
}

/// `M_k` as a polynomial.
pub fn modulus_poly(level: &TowerLevel) -> Poly {
    Poly::from_bigints(level.modulus())
}
