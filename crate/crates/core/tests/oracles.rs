use std::collections::BTreeSet;

use dct_tower::chebyshev::{cheb, factor_step, modulus_poly, ChebKind, Poly};
use dct_tower::exact_field::{tower_level, two_cos, two_cos_angle, DyadicRational, FieldElement, Rational};
use dct_tower::executor::{materialize_exact, oracle_exact};
use dct_tower::galois::{fixed_field_generator, galois_group, subgroup_chain};
use dct_tower::planner::{plan_dct2, plan_dct2_poly, plan_dct4, plan_dct4_poly};

fn tree_nodes(n: usize, r: DyadicRational) -> BTreeSet<(usize, DyadicRational)> {
    let mut out = BTreeSet::new();
    let mut frontier = vec![(n, r)];
    while let Some((m, s)) = frontier.pop() {
        if out.insert((m, s)) && m > 1 {
            frontier.push((m / 2, s.half().unwrap()));
            frontier.push((m / 2, s.complement_half().unwrap()));
        }
    }
    out
}

fn rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let pivot = rows[r][c].clone();
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].checked_div(&pivot).unwrap();
                for (x, p) in row.iter_mut().zip(&pivot_row).skip(c) {
                    *x = &*x - &(p * &f);
                }
            }
        }
        r += 1;
    }
    r
}

fn coords(e: &FieldElement, level: u32) -> Vec<Rational> {
    e.lift(level).unwrap().power_coeffs()
}

#[test]
fn every_tree_node_matches_the_exact_oracle() {
    for k in 0..=5 {
        let n = 1usize << k;
        for (m, s) in tree_nodes(n, DyadicRational::HALF) {
            let plan = plan_dct4_poly(m, s).unwrap();
            assert_eq!(materialize_exact(&plan), oracle_exact(plan.transform, m).unwrap(), "dct4_poly({s}) n={m}");
        }
        for plan in [plan_dct2_poly(n).unwrap(), plan_dct4(n).unwrap(), plan_dct2(n).unwrap()] {
            assert_eq!(materialize_exact(&plan), oracle_exact(plan.transform, n).unwrap(), "{} n={n}", plan.transform);
        }
    }
}

#[test]
fn minimal_polynomials_are_irreducible() {
    for k in 1..=3u32 {
        let roots: Vec<FieldElement> =
            (0..1i64 << k).map(|j| two_cos_angle(2 * j + 1, k + 1).unwrap().lift(k).unwrap()).collect();
        let full = roots.iter().fold(Poly::constant(FieldElement::one()), |p, a| &p * &(&Poly::x() - &Poly::constant(a.clone())));
        assert_eq!(full, modulus_poly(&tower_level(k).unwrap()), "M_{k} roots");
        for mask in 1..(1u32 << roots.len()) - 1 {
            let p = roots
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .fold(Poly::constant(FieldElement::one()), |p, (_, a)| &p * &(&Poly::x() - &Poly::constant(a.clone())));
            assert!(p.coeffs().iter().any(|c| c.as_rational().is_none()), "M_{k} has a rational factor {p}");
        }
    }
}

#[test]
fn fixed_subspaces_have_the_expected_dimension() {
    for k in 1..=3u32 {
        let g = galois_group(k).unwrap();
        let deg = g.order();
        let basis: Vec<FieldElement> = (0..deg).map(|i| FieldElement::generator(k).unwrap().checked_pow(i as u64)).collect();
        for h in subgroup_chain(&g) {
            // rows of σ - I over every σ in h, as a map on coordinate vectors
            let mut rows = vec![];
            for &s in &h {
                let sigma = &g.elements()[s];
                let images: Vec<Vec<Rational>> =
                    basis.iter().map(|b| coords(&(&sigma.apply(b).unwrap() - b), k)).collect();
                rows.extend((0..deg).map(|r| images.iter().map(|col| col[r].clone()).collect::<Vec<_>>()));
            }
            let index = deg / h.len();
            assert_eq!(deg - rank(rows), index, "k={k}, |H|={}", h.len());

            let gen = fixed_field_generator(&g, &h).unwrap();
            let powers: Vec<Vec<Rational>> = (0..index).map(|i| coords(&gen.checked_pow(i as u64), k)).collect();
            assert_eq!(rank(powers), index);
            let theta_half = FieldElement::generator(k).unwrap().scale(&Rational::new(1, 2).unwrap());
            let want = cheb(ChebKind::T, h.len()).eval(&theta_half).scale(&Rational::from_integer(2));
            assert_eq!(gen, want.lift(k).unwrap());
        }
    }
}

#[test]
fn factor_steps_multiply_back() {
    for (m, s) in tree_nodes(64, DyadicRational::HALF) {
        if m < 2 {
            continue;
        }
        let c = two_cos(s).unwrap();
        let (a, b) = factor_step(m.trailing_zeros(), &c, s).unwrap();
        let whole = &cheb(ChebKind::T, m).scale(&FieldElement::from_integer(2)) - &Poly::constant(c);
        assert_eq!(&a.poly() * &b.poly(), whole, "n={m}, r={s}");
    }
}
