//! Straight-line single-assignment form of a plan, shared by the graph and kernel emitters.
//!
//! Permutations and multiplications by 1 only rename values; every other stage
//! entry becomes one instruction, so the instruction mix matches `count_ops`.

use std::collections::HashMap;

use crate::exact_field::{FieldElement, Rational};
use crate::planner::{Stage, TransformPlan};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Operand {
    Input(usize),
    Value(usize),
}

#[derive(Clone, Debug, PartialEq)]
pub enum Op {
    Copy(Operand),
    Neg(Operand),
    Zero,
    Add(Operand, Operand),
    Sub(Operand, Operand),
    /// constant index, operand
    Mul(usize, Operand),
}

impl Op {
    pub fn operands(&self) -> Vec<Operand> {
        match self {
            Op::Copy(a) | Op::Neg(a) | Op::Mul(_, a) => vec![*a],
            Op::Add(a, b) | Op::Sub(a, b) => vec![*a, *b],
            Op::Zero => vec![],
        }
    }
}

#[derive(Clone, Debug)]
pub struct Dataflow {
    pub size: usize,
    pub constants: Vec<FieldElement>,
    /// `values[i]` defines `Operand::Value(i)`
    pub values: Vec<Op>,
    /// `outputs[k]` is the value holding `y_k`; every output is a distinct computed value
    pub outputs: Vec<usize>,
}

struct Builder {
    constants: Vec<FieldElement>,
    constant_ids: HashMap<String, usize>,
    values: Vec<Op>,
}

impl Builder {
    fn push(&mut self, op: Op) -> Operand {
        self.values.push(op);
        Operand::Value(self.values.len() - 1)
    }

    fn scale(&mut self, c: &FieldElement, v: Operand) -> Operand {
        match c.as_rational() {
            Some(q) if q.is_zero() => self.push(Op::Zero),
            Some(q) if q.is_one() => v,
            Some(q) if q == Rational::from(-1) => self.push(Op::Neg(v)),
            _ => {
                let key = format!("{c:?}");
                let next = self.constants.len();
                let id = *self.constant_ids.entry(key).or_insert(next);
                if id == next {
                    self.constants.push(c.clone());
                }
                self.push(Op::Mul(id, v))
            }
        }
    }

    fn run(&mut self, plan: &TransformPlan, x: &mut [Operand]) {
        for stage in &plan.stages {
            match stage {
                Stage::Identity => {}
                Stage::Permutation(idx) => {
                    let gathered: Vec<Operand> = idx.iter().map(|&i| x[i]).collect();
                    x.copy_from_slice(&gathered);
                }
                Stage::Diagonal(d) => {
                    for (v, c) in x.iter_mut().zip(d) {
                        *v = self.scale(c, *v);
                    }
                }
                Stage::ButterflyPair { m } => {
                    for i in 0..*m {
                        let (a, b) = (x[i], x[m + i]);
                        x[i] = self.push(Op::Add(a, b));
                        x[m + i] = self.push(Op::Sub(a, b));
                    }
                }
                Stage::AddScaleBlock { m, a } => {
                    let n = 2 * m;
                    for i in 0..*m {
                        x[i] = self.push(Op::Sub(x[i], x[n - 1 - i]));
                    }
                    for v in &mut x[*m..n] {
                        *v = self.scale(a, *v);
                    }
                }
                Stage::Dct2Merge { m } => {
                    let n = 2 * m;
                    let old = x.to_vec();
                    for i in 0..*m {
                        x[i] = self.push(Op::Add(old[i], old[n - 1 - i]));
                        x[m + i] = self.push(Op::Sub(old[i], old[n - 1 - i]));
                    }
                }
                Stage::BlockSplit(a, b) => {
                    let (lo, hi) = x.split_at_mut(a.size);
                    self.run(a, lo);
                    self.run(b, hi);
                }
            }
        }
    }
}

impl Dataflow {
    pub fn from_plan(plan: &TransformPlan) -> Self {
        let mut b = Builder { constants: Vec::new(), constant_ids: HashMap::new(), values: Vec::new() };
        let mut x: Vec<Operand> = (0..plan.size).map(Operand::Input).collect();
        b.run(plan, &mut x);
        let outputs = x
            .into_iter()
            .map(|v| match v {
                Operand::Value(i) => i,
                input => match b.push(Op::Copy(input)) {
                    Operand::Value(i) => i,
                    Operand::Input(_) => unreachable!(),
                },
            })
            .collect();
        Dataflow { size: plan.size, constants: b.constants, values: b.values, outputs }
    }

    /// `y<k>` for outputs, `t<j>` (numbered in definition order) for the rest, `x<i>` for inputs.
    pub fn names(&self) -> Vec<String> {
        let mut names = vec![String::new(); self.values.len()];
        for (k, &v) in self.outputs.iter().enumerate() {
            names[v] = format!("y{k}");
        }
        for (next, name) in names.iter_mut().filter(|n| n.is_empty()).enumerate() {
            *name = format!("t{next}");
        }
        names
    }

    pub fn operand_name(names: &[String], o: Operand) -> String {
        match o {
            Operand::Input(i) => format!("x{i}"),
            Operand::Value(v) => names[v].clone(),
        }
    }
}
