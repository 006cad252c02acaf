//! Language-neutral straight-line kernels and a reference interpreter for them.
//!
//! ```text
//! # dct4 n=2: 4 mults, 4 adds
//! const c0 = 1.4142135623730951  # √2
//! t0 = x0 - x1
//! t1 = c0 * x1
//! ```
//!
//! Each line is one of `v = a`, `v = -a`, `v = 0`, `v = a + b`, `v = a - b` or
//! `v = cK * a`; inputs are `x0…`, outputs `y0…`, and `#` starts a comment.

use std::collections::HashMap;

use super::dataflow::{Dataflow, Op};
use crate::error::{Error, Result};
use crate::executor::{count_ops, OpCount};
use crate::planner::TransformPlan;

pub fn emit_kernel(plan: &TransformPlan) -> String {
    let flow = Dataflow::from_plan(plan);
    let names = flow.names();
    let name = |o| Dataflow::operand_name(&names, o);
    let ops = count_ops(plan);
    let mut out = format!("# {} n={}: {} mults, {} adds\n", plan.transform, plan.size, ops.mults, ops.adds);
    for (i, c) in flow.constants.iter().enumerate() {
        out.push_str(&format!("const c{i} = {:?}  # {}\n", c.real_value(), c.to_surd_string()));
    }
    for (v, op) in flow.values.iter().enumerate() {
        let rhs = match op {
            Op::Copy(a) => name(*a),
            Op::Neg(a) => format!("-{}", name(*a)),
            Op::Zero => "0".to_string(),
            Op::Add(a, b) => format!("{} + {}", name(*a), name(*b)),
            Op::Sub(a, b) => format!("{} - {}", name(*a), name(*b)),
            Op::Mul(c, a) => format!("c{c} * {}", name(*a)),
        };
        out.push_str(&format!("{} = {rhs}\n", names[v]));
    }
    out
}

fn code_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
}

/// Multiplication and addition lines of a kernel listing.
pub fn kernel_op_lines(text: &str) -> OpCount {
    code_lines(text).filter(|(_, l)| !l.starts_with("const ")).fold(OpCount::default(), |acc, (_, l)| {
        let rhs = l.split_once('=').map_or("", |(_, r)| r);
        OpCount {
            mults: acc.mults + usize::from(rhs.contains(" * ")),
            adds: acc.adds + usize::from(rhs.contains(" + ") || rhs.contains(" - ")),
        }
    })
}

/// Runs a kernel listing on `input`, returning `y0…y{n-1}` with `n = input.len()`.
pub fn interpret_kernel(text: &str, input: &[f64]) -> Result<Vec<f64>> {
    let mut env: HashMap<String, f64> = input.iter().enumerate().map(|(i, &v)| (format!("x{i}"), v)).collect();
    for (line_no, line) in code_lines(text) {
        let bad = |what: &str| Error::Parse(format!("kernel line {line_no}: {what}: `{line}`"));
        let (lhs, rhs) = line.split_once('=').ok_or_else(|| bad("expected `=`"))?;
        let lhs = lhs.trim();
        let (target, is_const) = match lhs.strip_prefix("const ") {
            Some(name) => (name.trim(), true),
            None => (lhs, false),
        };
        let rhs = rhs.trim();
        let lookup = |name: &str| env.get(name).copied().ok_or_else(|| bad(&format!("undefined `{name}`")));
        let value = if is_const {
            rhs.parse::<f64>().map_err(|_| bad("invalid constant"))?
        } else if rhs == "0" {
            0.0
        } else if let Some((a, b)) = rhs.split_once(" * ") {
            lookup(a.trim())? * lookup(b.trim())?
        } else if let Some((a, b)) = rhs.split_once(" + ") {
            lookup(a.trim())? + lookup(b.trim())?
        } else if let Some((a, b)) = rhs.split_once(" - ") {
            lookup(a.trim())? - lookup(b.trim())?
        } else if let Some(a) = rhs.strip_prefix('-') {
            -lookup(a.trim())?
        } else {
            lookup(rhs)?
        };
        env.insert(target.to_string(), value);
    }
    (0..input.len())
        .map(|k| env.get(&format!("y{k}")).copied().ok_or_else(|| Error::Parse(format!("kernel never assigns y{k}"))))
        .collect()
}
