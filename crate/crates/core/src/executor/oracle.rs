//! Dense reference matrices built straight from the definitions, independent of any plan.

use std::f64::consts::PI;

use super::Matrix;
use crate::chebyshev::{cheb_values, root_angles, roots_of, ChebKind, RootFamily};
use crate::error::{Error, Result};
use crate::exact_field::{two_cos_angle, FieldElement, Rational};
use crate::planner::Transform;

fn require_power_of_two(n: usize) -> Result<()> {
    if n == 0 || !n.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(n));
    }
    Ok(())
}

fn poly_family(t: Transform) -> Option<RootFamily> {
    match t {
        Transform::Dct4Poly(r) => Some(RootFamily::Dct4Skew(r)),
        Transform::Dct2Poly => Some(RootFamily::Dct2),
        Transform::Dct4 | Transform::Dct2 => None,
    }
}

/// `cos(num·π / den)` with the integer numerator folded first.
fn cos_ratio(num: usize, den: usize) -> f64 {
    let folded = num % (2 * den);
    (PI * folded as f64 / den as f64).cos()
}

/// `[cos((k+½)(ℓ+½)π/n)]`, `[cos(k(ℓ+½)π/n)]`, or `[V_ℓ(α_k)]` evaluated as
/// `cos((ℓ+½)θ_k) / cos(θ_k/2)`.
pub fn oracle_float(transform: Transform, n: usize) -> Result<Matrix<f64>> {
    require_power_of_two(n)?;
    Ok(match poly_family(transform) {
        Some(family) => {
            let angles: Vec<f64> = root_angles(family, n)?.iter().map(|a| a.to_f64() * PI).collect();
            Matrix::from_fn(n, |k, l| ((l as f64 + 0.5) * angles[k]).cos() / (angles[k] / 2.0).cos())
        }
        None if transform == Transform::Dct4 => Matrix::from_fn(n, |k, l| cos_ratio((2 * k + 1) * (2 * l + 1), 4 * n)),
        None => Matrix::from_fn(n, |k, l| cos_ratio(k * (2 * l + 1), 2 * n)),
    })
}

/// Exact counterpart of [`oracle_float`]; polynomial transforms use the `V`
/// recurrence at the exact zeros, scaled ones use `cos = ½ · 2cos`.
pub fn oracle_exact(transform: Transform, n: usize) -> Result<Matrix<FieldElement>> {
    require_power_of_two(n)?;
    match poly_family(transform) {
        Some(family) => {
            let rows = roots_of(family, n)?
                .iter()
                .map(|alpha| cheb_values(ChebKind::V, n, alpha))
                .collect::<Vec<_>>();
            Ok(Matrix::from_fn(n, |k, l| rows[k][l].clone()))
        }
        None => {
            let (log2_den, row_mult) = match transform {
                Transform::Dct4 => (n.trailing_zeros() + 2, 2),
                _ => (n.trailing_zeros() + 1, 1),
            };
            let half = Rational::new(1, 2)?;
            let mut entries = Vec::with_capacity(n * n);
            for k in 0..n {
                for l in 0..n {
                    let num = (row_mult * k + row_mult - 1) * (2 * l + 1);
                    entries.push(two_cos_angle(num as i64, log2_den)?.scale(&half));
                }
            }
            Ok(Matrix::from_fn(n, |k, l| entries[k * n + l].clone()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_field::DyadicRational;

    #[test]
    fn small_oracles() {
        let d = oracle_float(Transform::Dct4, 1).unwrap();
        assert!((d.get(0, 0) - (PI / 4.0).cos()).abs() < 1e-15);
        let p = oracle_exact(Transform::Dct2Poly, 2).unwrap();
        assert_eq!(p.map(|e| e.as_rational().unwrap().to_string()), Matrix::from_fn(2, |r, c| if r == 1 && c == 1 { "-1".to_string() } else { "1".to_string() }));
    }

    #[test]
    fn exact_and_float_oracles_agree() {
        for t in [Transform::Dct4, Transform::Dct2, Transform::Dct2Poly, Transform::Dct4Poly(DyadicRational::new(5, 3).unwrap())] {
            let e = oracle_exact(t, 8).unwrap();
            let f = oracle_float(t, 8).unwrap();
            for k in 0..8 {
                for l in 0..8 {
                    assert!((e.get(k, l).real_value() - f.get(k, l)).abs() < 1e-12, "{t} ({k},{l})");
                }
            }
        }
    }

    #[test]
    fn dct2_entry_at_row_one() {
        let e = oracle_exact(Transform::Dct2, 2).unwrap();
        assert_eq!(e.get(1, 0).to_surd_string(), "√2/2");
        assert_eq!(e.get(1, 1).to_surd_string(), "-√2/2");
    }
}
