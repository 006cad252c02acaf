//! Dataflow graphs in Graphviz DOT.
//!
//! One node per input, per computed value and per output; multiplication
//! edges carry `class="mul"` and a label with the exact constant and its value.

use std::fmt::Write;

use super::dataflow::{Dataflow, Op, Operand};
use crate::planner::TransformPlan;

fn node(o: Operand, names: &[String]) -> String {
    Dataflow::operand_name(names, o)
}

pub fn emit_graph(plan: &TransformPlan) -> String {
    let flow = Dataflow::from_plan(plan);
    let names = flow.names();
    let mut out = String::new();
    let _ = writeln!(out, "digraph \"{}_n{}\" {{", plan.transform.name(), plan.size);
    let _ = writeln!(out, "  rankdir=LR;");
    for i in 0..flow.size {
        let _ = writeln!(out, "  x{i} [shape=box];");
    }
    for (v, op) in flow.values.iter().enumerate() {
        let shape = if names[v].starts_with('y') { "box" } else { "circle" };
        let label = match op {
            Op::Add(..) => "+",
            Op::Sub(..) => "-",
            Op::Neg(_) => "neg",
            Op::Zero => "0",
            Op::Copy(_) | Op::Mul(..) => "",
        };
        let _ = writeln!(out, "  {} [shape={shape}, xlabel=\"{label}\"];", names[v]);
        match op {
            Op::Mul(c, a) => {
                let k = &flow.constants[*c];
                let _ = writeln!(
                    out,
                    "  {} -> {} [class=\"mul\", label=\"{} ≈ {:.6}\"];",
                    node(*a, &names),
                    names[v],
                    k.to_surd_string(),
                    k.real_value()
                );
            }
            Op::Sub(a, b) => {
                let _ = writeln!(out, "  {} -> {};", node(*a, &names), names[v]);
                let _ = writeln!(out, "  {} -> {} [label=\"-1\"];", node(*b, &names), names[v]);
            }
            other => {
                for a in other.operands() {
                    let _ = writeln!(out, "  {} -> {};", node(a, &names), names[v]);
                }
            }
        }
    }
    out.push_str("}\n");
    out
}
