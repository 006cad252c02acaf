//! Strategies, independent oracles and property checks shared by the property
//! suite and the acceptance harness.

#![allow(dead_code)]

use std::f64::consts::PI;

use num_bigint::BigInt;
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

use dct_tower::chebyshev::{cheb, ChebKind};
use dct_tower::exact_field::{dickson_coeffs, two_cos_angle, FieldElement, Rational};
use dct_tower::galois::Automorphism;

pub const MAX_LEVEL: u32 = 4;

pub fn rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=4).prop_map(|(n, d)| Rational::new(n, d).unwrap())
}

/// Power-basis coefficients, about half of them zero.
pub fn element_at(level: u32) -> impl Strategy<Value = FieldElement> {
    let len = 1usize << level;
    prop::collection::vec(prop_oneof![Just(Rational::zero()), rational()], len)
        .prop_map(move |c| FieldElement::from_power_coeffs(level, &c).unwrap())
}

pub fn triple() -> impl Strategy<Value = (FieldElement, FieldElement, FieldElement)> {
    (0..=MAX_LEVEL).prop_flat_map(|k| (element_at(k), element_at(k), element_at(k)))
}

pub fn pair() -> impl Strategy<Value = (FieldElement, FieldElement)> {
    (0..=MAX_LEVEL).prop_flat_map(|k| (element_at(k), element_at(k)))
}

/// Schoolbook product in the power basis reduced by the monic modulus `2T_{2^k}(x/2)`.
pub fn power_basis_product(a: &[Rational], b: &[Rational], level: u32) -> Vec<Rational> {
    let n = 1usize << level;
    let modulus: Vec<Rational> = dickson_coeffs(n).into_iter().map(Rational::from).collect();
    let mut prod = vec![Rational::zero(); 2 * n - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            prod[i + j] = &prod[i + j] + &(x * y);
        }
    }
    for d in (n..prod.len()).rev() {
        let lead = prod[d].clone();
        if lead.is_zero() {
            continue;
        }
        for (j, m) in modulus.iter().enumerate() {
            prod[d - n + j] = &prod[d - n + j] - &(&lead * m);
        }
    }
    prod.truncate(n);
    prod
}

fn close(x: f64, y: f64, tol: f64) -> bool {
    (x - y).abs() <= tol * 1f64.max(x.abs()).max(y.abs())
}

pub fn check_field_axioms(a: &FieldElement, b: &FieldElement, c: &FieldElement) -> Result<(), TestCaseError> {
    let zero = FieldElement::zero();
    let one = FieldElement::one();
    prop_assert_eq!(&(a + b), &(b + a));
    prop_assert_eq!(&(a * b), &(b * a));
    prop_assert_eq!(&(&(a + b) + c), &(a + &(b + c)));
    prop_assert_eq!(&(&(a * b) * c), &(a * &(b * c)));
    prop_assert_eq!(&(a * &(b + c)), &(&(a * b) + &(a * c)));
    prop_assert_eq!(&(a + &zero), a);
    prop_assert_eq!(&(a * &one), a);
    prop_assert_eq!(&(&(a + b) - b), a);
    prop_assert!((&-a + a).is_zero());
    if !a.is_zero() {
        let inv = a.inverse().map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert!((a * &inv).is_one());
    }
    Ok(())
}

pub fn check_power_basis_oracle(a: &FieldElement, b: &FieldElement) -> Result<(), TestCaseError> {
    let want = power_basis_product(&a.power_coeffs(), &b.power_coeffs(), a.level());
    prop_assert_eq!((a * b).power_coeffs(), want);
    Ok(())
}

pub fn check_real_value_homomorphism(a: &FieldElement, b: &FieldElement) -> Result<(), TestCaseError> {
    let (x, y) = (a.real_value(), b.real_value());
    prop_assert!(close((a + b).real_value(), x + y, 1e-10));
    prop_assert!(close((a - b).real_value(), x - y, 1e-10));
    prop_assert!(close((a * b).real_value(), x * y, 1e-10));
    Ok(())
}

pub fn check_lift_homomorphism(a: &FieldElement, b: &FieldElement, up: u32) -> Result<(), TestCaseError> {
    let target = a.level() + up;
    let lift = |e: &FieldElement| e.lift(target).map_err(|err| TestCaseError::fail(err.to_string()));
    prop_assert_eq!(lift(&(a + b))?, &lift(a)? + &lift(b)?);
    prop_assert_eq!(lift(&(a * b))?, &lift(a)? * &lift(b)?);
    prop_assert_eq!(lift(a)?.demote(), a.demote());
    prop_assert!(close(lift(a)?.real_value(), a.real_value(), 1e-12));
    Ok(())
}

/// `T_n(cos φ) = cos nφ`, `U_n(cos φ) = sin((n+1)φ) / sin φ`, `V_n(cos φ) = cos((n+½)φ) / cos(φ/2)`,
/// evaluated exactly at `x = cos(jπ / 2^L)` and compared in floating point.
pub fn check_chebyshev_closed_form(kind: ChebKind, n: usize, j: i64, log2_den: u32) -> Result<(), TestCaseError> {
    let half = Rational::new(1, 2).unwrap();
    let x = two_cos_angle(j, log2_den).unwrap().scale(&half);
    let phi = PI * j as f64 / f64::from(1u32 << log2_den);
    let exact = cheb(kind, n).eval(&x).real_value();
    let nf = n as f64;
    let want = match kind {
        ChebKind::T => (nf * phi).cos(),
        ChebKind::U => ((nf + 1.0) * phi).sin() / phi.sin(),
        ChebKind::V => ((nf + 0.5) * phi).cos() / (phi / 2.0).cos(),
    };
    prop_assert!(close(exact, want, 1e-10), "{:?}_{} at cos({}π/2^{}): {} vs {}", kind, n, j, log2_den, exact, want);
    Ok(())
}

pub fn check_automorphism_homomorphism(
    level: u32,
    index: usize,
    a: &FieldElement,
    b: &FieldElement,
) -> Result<(), TestCaseError> {
    let image = FieldElement::cos_term(level, 2 * index + 1, Rational::one()).unwrap();
    let sigma = Automorphism::new(level, image).map_err(|e| TestCaseError::fail(e.to_string()))?;
    let s = |e: &FieldElement| sigma.apply(e).map_err(|err| TestCaseError::fail(err.to_string()));
    prop_assert_eq!(s(&(a * b))?, &s(a)? * &s(b)?);
    prop_assert_eq!(s(&(a + b))?, &s(a)? + &s(b)?);
    prop_assert_eq!(s(&FieldElement::one().lift(level).unwrap())?, FieldElement::one());
    Ok(())
}

/// Integer coefficients as a plain vector, for identities between whole polynomials.
pub fn integer_coeffs(kind: ChebKind, n: usize) -> Vec<BigInt> {
    dct_tower::chebyshev::cheb_integer_coeffs(kind, n)
}
