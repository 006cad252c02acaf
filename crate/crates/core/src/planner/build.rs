use std::collections::BTreeSet;

use super::{Stage, Transform, TransformPlan};
use crate::chebyshev::{root_angles, RootFamily};
use crate::error::{Error, Result};
use crate::exact_field::{two_cos, two_cos_angle, DyadicRational, FieldElement, Rational};

fn require_power_of_two(n: usize) -> Result<()> {
    if n == 0 || !n.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(n));
    }
    Ok(())
}

/// Gather indices that put `children` (the zeros of the two factors, concatenated)
/// into the order of `parent`.
fn sorting_permutation(parent: &[Rational], children: &[Rational]) -> Result<Vec<usize>> {
    let mut order: Vec<usize> = (0..children.len()).collect();
    order.sort_by(|&a, &b| children[a].cmp(&children[b]));
    if order.iter().map(|&i| &children[i]).ne(parent.iter()) {
        return Err(Error::MalformedPlan("factor zeros do not match the parent zeros".into()));
    }
    Ok(order)
}

/// Unscaled skew DCT-4 of size `n` via
/// `2T_{2m} - 2cos(rπ) = (2T_m - 2cos(rπ/2)) (2T_m - 2cos((1 - r/2)π))`.
pub fn plan_dct4_poly(n: usize, r: DyadicRational) -> Result<TransformPlan> {
    require_power_of_two(n)?;
    let transform = Transform::Dct4Poly(r);
    if n == 1 {
        return TransformPlan::new(transform, 1, vec![Stage::Identity]);
    }
    let m = n / 2;
    let (r1, r2) = (r.half()?, r.complement_half()?);
    let a = two_cos(r1)?;
    let left = plan_dct4_poly(m, r1)?;
    let right = plan_dct4_poly(m, r2)?;
    let mut children = root_angles(RootFamily::Dct4Skew(r1), m)?;
    children.extend(root_angles(RootFamily::Dct4Skew(r2), m)?);
    let perm = sorting_permutation(&root_angles(RootFamily::Dct4Skew(r), n)?, &children)?;
    TransformPlan::new(
        transform,
        n,
        vec![
            Stage::AddScaleBlock { m, a },
            Stage::ButterflyPair { m },
            Stage::BlockSplit(Box::new(left), Box::new(right)),
            Stage::Permutation(perm),
        ],
    )
}

/// Unscaled DCT-2 of size `n` via `(x - 1) U_{2m-1} = (x - 1) U_{m-1} · 2T_m`.
pub fn plan_dct2_poly(n: usize) -> Result<TransformPlan> {
    require_power_of_two(n)?;
    if n == 1 {
        return TransformPlan::new(Transform::Dct2Poly, 1, vec![Stage::Identity]);
    }
    let m = n / 2;
    let left = plan_dct2_poly(m)?;
    let right = plan_dct4_poly(m, DyadicRational::HALF)?;
    let mut children = root_angles(RootFamily::Dct2, m)?;
    children.extend(root_angles(RootFamily::Dct4Skew(DyadicRational::HALF), m)?);
    let perm = sorting_permutation(&root_angles(RootFamily::Dct2, n)?, &children)?;
    TransformPlan::new(
        Transform::Dct2Poly,
        n,
        vec![
            Stage::Dct2Merge { m },
            Stage::BlockSplit(Box::new(left), Box::new(right)),
            Stage::Permutation(perm),
        ],
    )
}

fn with_diagonal(poly: TransformPlan, transform: Transform, diag: Vec<FieldElement>) -> Result<TransformPlan> {
    let mut stages = poly.stages;
    stages.push(Stage::Diagonal(diag));
    TransformPlan::new(transform, poly.size, stages)
}

/// `DCT-4 = diag(cos((2k+1)π / 4n)) · DCT-4(1/2)`.
pub fn plan_dct4(n: usize) -> Result<TransformPlan> {
    let poly = plan_dct4_poly(n, DyadicRational::HALF)?;
    let log2 = n.trailing_zeros() + 2;
    let half = Rational::new(1, 2)?;
    let diag = (0..n)
        .map(|k| Ok(two_cos_angle(2 * k as i64 + 1, log2)?.scale(&half)))
        .collect::<Result<Vec<_>>>()?;
    with_diagonal(poly, Transform::Dct4, diag)
}

/// `DCT-2 = diag(cos(kπ / 2n)) · DCT-2 polynomial transform`.
pub fn plan_dct2(n: usize) -> Result<TransformPlan> {
    let poly = plan_dct2_poly(n)?;
    let log2 = n.trailing_zeros() + 1;
    let half = Rational::new(1, 2)?;
    let diag = (0..n)
        .map(|k| Ok(two_cos_angle(k as i64, log2)?.scale(&half)))
        .collect::<Result<Vec<_>>>()?;
    with_diagonal(poly, Transform::Dct2, diag)
}

/// Every skew a size-`n` skew DCT-4 recursion touches, the root included.
pub fn reachable_skews(n: usize, r: DyadicRational) -> Result<BTreeSet<DyadicRational>> {
    require_power_of_two(n)?;
    let mut out = BTreeSet::new();
    let mut frontier = vec![(n, r)];
    while let Some((size, skew)) = frontier.pop() {
        out.insert(skew);
        if size > 1 {
            frontier.push((size / 2, skew.half()?));
            frontier.push((size / 2, skew.complement_half()?));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn half() -> DyadicRational {
        DyadicRational::HALF
    }

    #[test]
    fn size_four_permutation() {
        let plan = plan_dct4_poly(4, half()).unwrap();
        assert_eq!(plan.stages.last(), Some(&Stage::Permutation(vec![0, 2, 3, 1])));
        assert_eq!(plan.depth(), 2);
    }

    #[test]
    fn size_eight_permutation_has_corner_ones_and_alternating_pairs() {
        let plan = plan_dct4_poly(8, half()).unwrap();
        assert_eq!(plan.stages.last(), Some(&Stage::Permutation(vec![0, 4, 5, 1, 2, 6, 7, 3])));
    }

    #[test]
    fn dct2_permutation_is_a_stride() {
        for n in [2usize, 4, 8, 16] {
            let plan = plan_dct2_poly(n).unwrap();
            let m = n / 2;
            let stride: Vec<usize> = (0..n).map(|i| if i % 2 == 0 { i / 2 } else { m + i / 2 }).collect();
            assert_eq!(plan.stages.last(), Some(&Stage::Permutation(stride)), "n = {n}");
        }
    }

    #[test]
    fn non_powers_of_two_are_rejected() {
        assert!(matches!(plan_dct4_poly(6, half()), Err(Error::NotPowerOfTwo(6))));
        assert!(matches!(plan_dct2(0), Err(Error::NotPowerOfTwo(0))));
    }

    #[test]
    fn stages_touch_at_most_two_inputs() {
        for n in [1usize, 2, 8, 64] {
            assert!(plan_dct4(n).unwrap().max_fan_in() <= 2);
            assert!(plan_dct2(n).unwrap().max_fan_in() <= 2);
        }
    }

    #[test]
    fn skews_stay_dyadic_and_levels_grow_with_depth() {
        let skews = reachable_skews(8, half()).unwrap();
        assert_eq!(skews.len(), 15);
        assert!(skews.iter().all(|r| r.log2_denominator() <= 4));
        assert_eq!(plan_dct4_poly(8, half()).unwrap().max_level(), 3);
        assert_eq!(plan_dct4(8).unwrap().max_level(), 4);
    }
}
