//! Running plans: exact and floating application, dense materialization,
//! reference matrices, operation counts and verification.

mod oracle;
mod verify;

pub use oracle::{oracle_exact, oracle_float};
pub use verify::{verify, verify_with_cap, Mode, VerifyReport, DEFAULT_EXACT_CAP};

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact_field::{FieldElement, Rational};
use crate::planner::{Stage, TransformPlan};

/// Values a plan can act on, with the constant type they are scaled by.
pub trait Sample: Clone + Send + Sync {
    type Constant: Send + Sync;
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn scaled(&self, c: &Self::Constant) -> Self;
    fn constant(c: &FieldElement) -> Self::Constant;
}

impl Sample for f64 {
    type Constant = f64;
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn scaled(&self, c: &f64) -> Self {
        c * self
    }
    fn constant(c: &FieldElement) -> f64 {
        c.real_value()
    }
}

impl Sample for FieldElement {
    type Constant = FieldElement;
    fn zero() -> Self {
        FieldElement::zero()
    }
    fn one() -> Self {
        FieldElement::one()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn scaled(&self, c: &FieldElement) -> Self {
        c * self
    }
    fn constant(c: &FieldElement) -> FieldElement {
        c.clone()
    }
}

enum Step<'p, C> {
    Identity,
    Gather(&'p [usize]),
    Scale(Vec<C>),
    Butterfly(usize),
    AddScale(usize, C),
    Merge(usize),
    Split(Box<Compiled<'p, C>>, Box<Compiled<'p, C>>),
}

/// A plan with its constants converted once for repeated application.
pub struct Compiled<'p, C> {
    size: usize,
    steps: Vec<Step<'p, C>>,
}

impl<'p, C: Send + Sync> Compiled<'p, C> {
    pub fn new<T: Sample<Constant = C>>(plan: &'p TransformPlan) -> Self {
        let steps = plan
            .stages
            .iter()
            .map(|s| match s {
                Stage::Identity => Step::Identity,
                Stage::Permutation(idx) => Step::Gather(idx),
                Stage::Diagonal(d) => Step::Scale(d.iter().map(T::constant).collect()),
                Stage::ButterflyPair { m } => Step::Butterfly(*m),
                Stage::AddScaleBlock { m, a } => Step::AddScale(*m, T::constant(a)),
                Stage::Dct2Merge { m } => Step::Merge(*m),
                Stage::BlockSplit(a, b) => {
                    Step::Split(Box::new(Compiled::new::<T>(a)), Box::new(Compiled::new::<T>(b)))
                }
            })
            .collect();
        Compiled { size: plan.size, steps }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn apply<T: Sample<Constant = C>>(&self, input: &[T]) -> Result<Vec<T>> {
        if input.len() != self.size {
            return Err(Error::LengthMismatch { expected: self.size, got: input.len() });
        }
        let mut x = input.to_vec();
        self.run(&mut x);
        Ok(x)
    }

    fn run<T: Sample<Constant = C>>(&self, x: &mut [T]) {
        for step in &self.steps {
            match step {
                Step::Identity => {}
                Step::Gather(idx) => {
                    let gathered: Vec<T> = idx.iter().map(|&i| x[i].clone()).collect();
                    x.clone_from_slice(&gathered);
                }
                Step::Scale(d) => {
                    for (v, c) in x.iter_mut().zip(d) {
                        *v = v.scaled(c);
                    }
                }
                Step::Butterfly(m) => {
                    let (lo, hi) = x.split_at_mut(*m);
                    for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                        let (s, d) = (a.add(b), a.sub(b));
                        *a = s;
                        *b = d;
                    }
                }
                Step::AddScale(m, c) => {
                    let n = 2 * m;
                    for i in 0..*m {
                        x[i] = x[i].sub(&x[n - 1 - i]);
                    }
                    for v in &mut x[*m..] {
                        *v = v.scaled(c);
                    }
                }
                Step::Merge(m) => {
                    let n = 2 * m;
                    let (sums, diffs): (Vec<T>, Vec<T>) =
                        (0..*m).map(|i| (x[i].add(&x[n - 1 - i]), x[i].sub(&x[n - 1 - i]))).unzip();
                    for (i, (s, d)) in sums.into_iter().zip(diffs).enumerate() {
                        x[i] = s;
                        x[m + i] = d;
                    }
                }
                Step::Split(a, b) => {
                    let (lo, hi) = x.split_at_mut(a.size);
                    a.run(lo);
                    b.run(hi);
                }
            }
        }
    }
}

pub fn apply_float(plan: &TransformPlan, input: &[f64]) -> Result<Vec<f64>> {
    Compiled::new::<f64>(plan).apply(input)
}

pub fn apply_exact(plan: &TransformPlan, input: &[FieldElement]) -> Result<Vec<FieldElement>> {
    Compiled::new::<FieldElement>(plan).apply(input)
}

/// Dense square matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T> {
    size: usize,
    entries: Vec<T>,
}

impl<T: Clone> Matrix<T> {
    pub fn from_fn(size: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let entries = (0..size * size).map(|i| f(i / size, i % size)).collect();
        Matrix { size, entries }
    }

    pub fn from_columns(columns: Vec<Vec<T>>) -> Self {
        let size = columns.len();
        Matrix::from_fn(size, |r, c| columns[c][r].clone())
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, row: usize, col: usize) -> &T {
        &self.entries[row * self.size + col]
    }

    pub fn row(&self, row: usize) -> &[T] {
        &self.entries[row * self.size..(row + 1) * self.size]
    }

    pub fn column(&self, col: usize) -> Vec<T> {
        (0..self.size).map(|r| self.get(r, col).clone()).collect()
    }

    pub fn map<U: Clone>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { size: self.size, entries: self.entries.iter().map(f).collect() }
    }
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.size {
            let row: Vec<String> = self.entries[r * self.size..(r + 1) * self.size].iter().map(|v| v.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

fn materialize_with<T: Sample>(plan: &TransformPlan) -> Matrix<T> {
    let compiled = Compiled::new::<T>(plan);
    let n = plan.size;
    let columns: Vec<Vec<T>> = (0..n)
        .into_par_iter()
        .map(|j| {
            let mut e = vec![T::zero(); n];
            e[j] = T::one();
            compiled.run(&mut e);
            e
        })
        .collect();
    Matrix::from_columns(columns)
}

/// The plan's matrix, one basis vector per column.
pub fn materialize_float(plan: &TransformPlan) -> Matrix<f64> {
    materialize_with::<f64>(plan)
}

pub fn materialize_exact(plan: &TransformPlan) -> Matrix<FieldElement> {
    materialize_with::<FieldElement>(plan)
}

/// Multiplications by constants other than `0, ±1`, and two-operand additions or subtractions.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct OpCount {
    pub mults: usize,
    pub adds: usize,
}

impl std::ops::Add for OpCount {
    type Output = OpCount;
    fn add(self, o: OpCount) -> OpCount {
        OpCount { mults: self.mults + o.mults, adds: self.adds + o.adds }
    }
}

impl fmt::Display for OpCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "mults: {}, adds: {}", self.mults, self.adds)
    }
}

/// `0`, `1` or `-1`, decided exactly.
pub fn is_trivial_constant(c: &FieldElement) -> bool {
    c.as_rational().is_some_and(|q| q.is_zero() || q.is_one() || q == Rational::from(-1))
}

pub fn count_ops(plan: &TransformPlan) -> OpCount {
    plan.stages.iter().fold(OpCount::default(), |acc, s| {
        acc + match s {
            Stage::Identity | Stage::Permutation(_) => OpCount::default(),
            Stage::Diagonal(d) => OpCount { mults: d.iter().filter(|c| !is_trivial_constant(c)).count(), adds: 0 },
            Stage::ButterflyPair { m } | Stage::Dct2Merge { m } => OpCount { mults: 0, adds: 2 * m },
            Stage::AddScaleBlock { m, a } => {
                OpCount { mults: if is_trivial_constant(a) { 0 } else { *m }, adds: *m }
            }
            Stage::BlockSplit(a, b) => count_ops(a) + count_ops(b),
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_field::{DyadicRational, Rational};
    use crate::planner::{plan_dct2, plan_dct2_poly, plan_dct4, plan_dct4_poly};

    fn sqrt2() -> FieldElement {
        FieldElement::cos_term(2, 2, Rational::one()).unwrap()
    }

    #[test]
    fn dct4_poly_size_two() {
        let plan = plan_dct4_poly(2, DyadicRational::HALF).unwrap();
        let m = materialize_exact(&plan);
        let one = FieldElement::one();
        assert_eq!(m.row(0), &[one.clone(), &sqrt2() - &one]);
        assert_eq!(m.row(1), &[one.clone(), &(-&sqrt2()) - &one]);
        let y = apply_exact(&plan, &[FieldElement::one(), FieldElement::zero()]).unwrap();
        assert_eq!(y, vec![one.clone(), one]);
    }

    #[test]
    fn small_examples() {
        assert_eq!(apply_float(&plan_dct2(2).unwrap(), &[1.0, 1.0]).unwrap(), vec![2.0, 0.0]);
        let m = materialize_exact(&plan_dct2_poly(2).unwrap());
        assert_eq!(m.map(|e| e.as_rational().unwrap()), Matrix::from_fn(2, |r, c| Rational::from(if r == 1 && c == 1 { -1 } else { 1 })));
        let m = materialize_exact(&plan_dct4(1).unwrap());
        assert_eq!(m.get(0, 0).to_surd_string(), "√2/2");
    }

    #[test]
    fn zero_in_zero_out_and_length_checks() {
        let plan = plan_dct4(8).unwrap();
        assert_eq!(apply_float(&plan, &[0.0; 8]).unwrap(), vec![0.0; 8]);
        assert!(matches!(apply_float(&plan, &[0.0; 4]), Err(Error::LengthMismatch { expected: 8, got: 4 })));
    }

    #[test]
    fn counts_match_closed_forms() {
        assert_eq!(count_ops(&plan_dct4_poly(8, DyadicRational::HALF).unwrap()), OpCount { mults: 12, adds: 36 });
        assert_eq!(count_ops(&plan_dct2_poly(8).unwrap()).mults, 5);
        assert_eq!(count_ops(&plan_dct2_poly(16).unwrap()).mults, 17);
        assert_eq!(count_ops(&plan_dct4(8).unwrap()).mults, 20);
        assert_eq!(count_ops(&plan_dct2(8).unwrap()).mults, 12);
    }

    #[test]
    fn columns_are_basis_images() {
        let plan = plan_dct4_poly(8, DyadicRational::new(3, 2).unwrap()).unwrap();
        let m = materialize_exact(&plan);
        for j in 0..8 {
            let mut e = vec![FieldElement::zero(); 8];
            e[j] = FieldElement::one();
            assert_eq!(apply_exact(&plan, &e).unwrap(), m.column(j));
        }
    }
}
