//! Plan files, dataflow graphs and straight-line kernels.

mod dataflow;
mod graph;
mod json;
mod kernel;

pub use dataflow::{Dataflow, Op, Operand};
pub use graph::emit_graph;
pub use json::{from_json, to_json, to_json_pretty, COEFFS_MAX_LEVEL};
pub use kernel::{emit_kernel, interpret_kernel, kernel_op_lines};

use crate::error::{Error, Result};
use crate::planner::TransformPlan;

/// An output format selectable by name.
pub trait Emitter: Sync {
    fn name(&self) -> &'static str;
    fn emit(&self, plan: &TransformPlan) -> String;
}

struct Json;
struct Graph;
struct Kernel;

impl Emitter for Json {
    fn name(&self) -> &'static str {
        "json"
    }
    fn emit(&self, plan: &TransformPlan) -> String {
        to_json_pretty(plan) + "\n"
    }
}

impl Emitter for Graph {
    fn name(&self) -> &'static str {
        "graph"
    }
    fn emit(&self, plan: &TransformPlan) -> String {
        emit_graph(plan)
    }
}

impl Emitter for Kernel {
    fn name(&self) -> &'static str {
        "kernel"
    }
    fn emit(&self, plan: &TransformPlan) -> String {
        emit_kernel(plan)
    }
}

static EMITTERS: [&dyn Emitter; 3] = [&Json, &Graph, &Kernel];

pub fn emitters() -> &'static [&'static dyn Emitter] {
    &EMITTERS
}

pub fn emitter(name: &str) -> Result<&'static dyn Emitter> {
    EMITTERS
        .iter()
        .copied()
        .find(|e| e.name() == name)
        .ok_or_else(|| Error::InvalidArgument(format!("unknown output format `{name}`")))
}
