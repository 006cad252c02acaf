//! Dense power-basis polynomials over Q, lowest degree first. Only what the
//! field needs: basis conversion, reduction and inverses.

use num_bigint::BigInt;
use num_traits::Zero;

use super::rational::Rational;
use super::tower::dickson_coeffs;
use crate::error::{Error, Result};

pub(crate) fn trim(p: &mut Vec<Rational>) {
    while p.last().is_some_and(Rational::is_zero) {
        p.pop();
    }
}

fn degree(p: &[Rational]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

fn mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
        for (j, y) in b.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
            out[i + j] += &(x * y);
        }
    }
    trim(&mut out);
    out
}

fn sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(&mut out);
    out
}

pub(crate) fn divmod(a: &[Rational], b: &[Rational]) -> Result<(Vec<Rational>, Vec<Rational>)> {
    let db = degree(b).ok_or(Error::DivisionByZero)?;
    let lead_inv = b[db].recip()?;
    let mut rem: Vec<Rational> = a.to_vec();
    trim(&mut rem);
    if rem.len() <= db {
        return Ok((Vec::new(), rem));
    }
    let mut quot = vec![Rational::zero(); rem.len() - db];
    while let Some(dr) = degree(&rem) {
        if dr < db {
            break;
        }
        let c = &rem[dr] * &lead_inv;
        let shift = dr - db;
        for (j, bj) in b.iter().enumerate().take(db + 1) {
            if !bj.is_zero() {
                rem[shift + j] -= &(&c * bj);
            }
        }
        quot[shift] = c;
        trim(&mut rem);
    }
    trim(&mut quot);
    Ok((quot, rem))
}

/// Inverse of `a` in `Q[x] / modulus` via the extended Euclidean algorithm.
pub(crate) fn inverse_mod(a: &[Rational], modulus: &[Rational]) -> Result<Vec<Rational>> {
    let mut r0: Vec<Rational> = modulus.to_vec();
    let mut r1: Vec<Rational> = a.to_vec();
    trim(&mut r1);
    if r1.is_empty() {
        return Err(Error::DivisionByZero);
    }
    let mut s0: Vec<Rational> = Vec::new();
    let mut s1: Vec<Rational> = vec![Rational::one()];
    while degree(&r1).is_some_and(|d| d > 0) {
        let (q, r) = divmod(&r0, &r1)?;
        let s2 = sub(&s0, &mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        if r1.is_empty() {
            // a shares a factor with the modulus; cannot happen for an irreducible modulus
            return Err(Error::DivisionByZero);
        }
    }
    let c = r1[0].recip()?;
    let inv: Vec<Rational> = s1.iter().map(|x| x * &c).collect();
    Ok(divmod(&inv, modulus)?.1)
}

/// Power-basis coefficients of `Σ c_i C_i(x)` where index 0 is the plain constant.
pub(crate) fn cos_to_power<'a>(
    terms: impl Iterator<Item = (usize, &'a Rational)>,
    len: usize,
) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); len];
    for (i, c) in terms {
        if i == 0 {
            out[0] += c;
            continue;
        }
        for (j, d) in dickson_coeffs(i).into_iter().enumerate() {
            if !d.is_zero() {
                out[j] += &(c * &Rational::from(d));
            }
        }
    }
    out
}

/// Inverse of [`cos_to_power`]: `x^i = Σ_{t<i/2} binom(i,t) C_{i-2t} + [i even] binom(i, i/2)`.
pub(crate) fn power_to_cos(p: &[Rational]) -> Vec<(usize, Rational)> {
    let mut acc = vec![Rational::zero(); p.len().max(1)];
    for (i, c) in p.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
        let mut binom = BigInt::from(1);
        for t in 0..=i / 2 {
            let idx = i - 2 * t;
            acc[idx] += &(c * &Rational::from(binom.clone()));
            binom = binom * BigInt::from(i - t) / BigInt::from(t + 1);
        }
    }
    acc.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect()
}
