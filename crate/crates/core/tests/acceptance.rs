//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any failure.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use proptest::strategy::{Strategy, ValueTree};
use proptest::test_runner::{Config, TestRunner};

use common::*;
use dct_tower::chebyshev::{cheb, factor_step, ChebKind, Poly};
use dct_tower::codegen::{emit_kernel, interpret_kernel, kernel_op_lines};
use dct_tower::exact_field::{two_cos, DyadicRational, FieldElement, Rational};
use dct_tower::executor::{apply_float, count_ops, materialize_exact, materialize_float, oracle_exact, oracle_float};
use dct_tower::galois::{fixed_field_generator, galois_group, subgroup_chain};
use dct_tower::planner::{plan_dct2_poly, plan_dct4, plan_dct4_poly};

type Check = std::result::Result<String, String>;
type Criterion = (&'static str, fn() -> Check, u64);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

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

fn op_counts() -> Check {
    for k in 1..=10u32 {
        let n = 1usize << k;
        let ops = count_ops(&plan_dct4_poly(n, DyadicRational::HALF).map_err(|e| e.to_string())?);
        let want = (n / 2 * k as usize, 3 * n / 2 * k as usize);
        ensure((ops.mults, ops.adds) == want, || format!("n={n}: {ops}, want {want:?}"))?;
    }
    Ok("n = 2..1024 match (n/2)log n mults, (3n/2)log n adds".into())
}

fn dct2_mults() -> Check {
    let got: Vec<usize> =
        [1, 2, 4, 8, 16].iter().map(|&n| count_ops(&plan_dct2_poly(n).unwrap()).mults).collect();
    ensure(got == [0, 0, 1, 5, 17], || format!("mults {got:?}"))?;
    Ok(format!("mults {got:?}"))
}

fn exact_equivalence() -> Check {
    let mut nodes = BTreeSet::new();
    for k in 0..=5 {
        nodes.extend(tree_nodes(1 << k, DyadicRational::HALF));
    }
    for &(m, s) in &nodes {
        let plan = plan_dct4_poly(m, s).map_err(|e| e.to_string())?;
        ensure(materialize_exact(&plan) == oracle_exact(plan.transform, m).unwrap(), || format!("dct4_poly({s}) n={m}"))?;
    }
    for k in 0..=5 {
        let plan = plan_dct2_poly(1 << k).unwrap();
        ensure(materialize_exact(&plan) == oracle_exact(plan.transform, plan.size).unwrap(), || {
            format!("dct2_poly n={}", plan.size)
        })?;
    }
    Ok(format!("{} dct4_poly nodes and dct2_poly n <= 32 equal exactly", nodes.len()))
}

fn float_equivalence() -> Check {
    let mut worst = 0.0f64;
    for k in 0..=12 {
        let n = 1usize << k;
        let plan = plan_dct4(n).map_err(|e| e.to_string())?;
        let (got, want) = (materialize_float(&plan), oracle_float(plan.transform, n).unwrap());
        let dev = (0..n)
            .flat_map(|r| (0..n).map(move |c| (r, c)))
            .map(|(r, c)| (got.get(r, c) - want.get(r, c)).abs())
            .fold(0.0, |a: f64, d| if d.is_nan() { f64::INFINITY } else { a.max(d) });
        ensure(dev < 1e-10, || format!("n={n}: max deviation {dev:e}"))?;
        worst = worst.max(dev);
    }
    Ok(format!("dct4 up to n=4096, max deviation {worst:.2e}"))
}

fn galois_table() -> Check {
    let g = galois_group(2).map_err(|e| e.to_string())?;
    let want = [[0, 1, 2, 3], [1, 3, 0, 2], [2, 0, 3, 1], [3, 2, 1, 0]];
    ensure(g.cayley().iter().zip(&want).all(|(a, b)| a == b), || format!("table {:?}", g.cayley()))?;
    for k in 1..=4 {
        let g = galois_group(k).map_err(|e| e.to_string())?;
        ensure(g.order() == 1 << k && g.is_cyclic() && g.satisfies_group_axioms(), || format!("k={k}"))?;
    }
    Ok("Cayley table of Gal(2T_4) matches; cyclic of order 2^k for k <= 4".into())
}

fn factorization() -> Check {
    let two = FieldElement::from_integer(2);
    let mut checked = 0;
    for k in 1..=10u32 {
        for (m, s) in tree_nodes(1 << k, DyadicRational::HALF) {
            if m < 2 {
                continue;
            }
            let c = two_cos(s).map_err(|e| e.to_string())?;
            let (a, b) = factor_step(m.trailing_zeros(), &c, s).map_err(|e| e.to_string())?;
            let whole = &cheb(ChebKind::T, m).scale(&two) - &Poly::constant(c);
            ensure(&a.poly() * &b.poly() == whole, || format!("n={m}, r={s}"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} factor steps multiply back exactly"))
}

fn tower_correspondence() -> Check {
    let half = Rational::new(1, 2).unwrap();
    for k in 1..=3u32 {
        let g = galois_group(k).map_err(|e| e.to_string())?;
        let theta_half = FieldElement::generator(k).unwrap().scale(&half);
        for h in subgroup_chain(&g) {
            let gen = fixed_field_generator(&g, &h).map_err(|e| e.to_string())?;
            let want = cheb(ChebKind::T, h.len()).eval(&theta_half).scale(&Rational::from_integer(2));
            ensure(gen == want.lift(k).unwrap(), || format!("k={k}, |H|={}", h.len()))?;
            for (i, sigma) in g.elements().iter().enumerate() {
                let fixed = sigma.apply(&gen).unwrap() == gen;
                ensure(fixed == h.contains(&i), || format!("k={k}, |H|={}, σ{i}", h.len()))?;
            }
        }
    }
    Ok("fixed fields of every subgroup for k <= 3".into())
}

fn kernel_fidelity() -> Check {
    let mut runner = TestRunner::deterministic();
    for n in [8usize, 16, 64] {
        let plan = plan_dct4(n).map_err(|e| e.to_string())?;
        let text = emit_kernel(&plan);
        ensure(kernel_op_lines(&text) == count_ops(&plan), || format!("n={n}: kernel line counts"))?;
        let inputs = proptest::collection::vec(-1.0f64..1.0, n);
        for _ in 0..100 {
            let x = inputs.new_tree(&mut runner).map_err(|e| e.to_string())?.current();
            let got = interpret_kernel(&text, &x).map_err(|e| e.to_string())?;
            let want = apply_float(&plan, &x).unwrap();
            let dev = got.iter().zip(&want).map(|(g, w)| (g - w).abs()).fold(0.0, f64::max);
            ensure(dev <= 1e-12, || format!("n={n}: deviation {dev:e}"))?;
        }
    }
    Ok("100 random inputs each for n = 8, 16, 64".into())
}

fn fail(name: &str, e: impl std::fmt::Display) -> String {
    format!("{name}: {e}")
}

fn property_suite() -> Check {
    let mut runner = TestRunner::new(Config { cases: 256, failure_persistence: None, ..Config::default() });
    runner.run(&triple(), |(a, b, c)| check_field_axioms(&a, &b, &c)).map_err(|e| fail("field axioms", e))?;
    runner.run(&pair(), |(a, b)| check_power_basis_oracle(&a, &b)).map_err(|e| fail("power basis", e))?;
    runner.run(&pair(), |(a, b)| check_real_value_homomorphism(&a, &b)).map_err(|e| fail("real_value", e))?;
    runner.run(&(pair(), 0u32..=3), |((a, b), up)| check_lift_homomorphism(&a, &b, up)).map_err(|e| fail("lift", e))?;
    for kind in [ChebKind::T, ChebKind::U, ChebKind::V] {
        for n in 0..=64 {
            for log2_den in 1..=4u32 {
                for j in 1..1i64 << log2_den {
                    check_chebyshev_closed_form(kind, n, j, log2_den).map_err(|e| fail("chebyshev", e))?;
                }
            }
        }
    }
    Ok("field axioms, homomorphisms and Chebyshev closed forms hold".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("operation counts", op_counts, 5),
        ("scaled DCT-2 multiplications", dct2_mults, 1),
        ("exact oracle equivalence", exact_equivalence, 60),
        ("float oracle equivalence", float_equivalence, 120),
        ("Galois table", galois_table, 10),
        ("factorization identity", factorization, 30),
        ("tower correspondence", tower_correspondence, 10),
        ("kernel fidelity", kernel_fidelity, 10),
        ("property suite", property_suite, 30),
    ];
    let mut failed = 0;
    for (i, (name, check, limit)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let outcome = match result {
            Ok(detail) if elapsed <= Duration::from_secs(limit) => Ok(detail),
            Ok(detail) => Err(format!("{detail}, but over the {limit} s limit")),
            Err(e) => Err(e),
        };
        match outcome {
            Ok(detail) => println!("AC{} PASS {name} ({:.2} s): {detail}", i + 1, elapsed.as_secs_f64()),
            Err(e) => {
                failed += 1;
                println!("AC{} FAIL {name} ({:.2} s): {e}", i + 1, elapsed.as_secs_f64());
            }
        }
    }
    println!("{} of 9 criteria passed", 9 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
