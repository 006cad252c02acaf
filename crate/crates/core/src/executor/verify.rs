use std::fmt;

use serde::Serialize;

use super::{count_ops, materialize_exact, materialize_float, oracle_exact, oracle_float, OpCount};
use crate::error::{Error, Result};
use crate::planner::{SkewTree, TransformPlan};

/// Largest size verified exactly unless the caller picks another cap.
pub const DEFAULT_EXACT_CAP: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Float,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub transform: String,
    pub size: usize,
    pub mode: Mode,
    pub passed: bool,
    pub max_dev: Option<f64>,
    pub tolerance: Option<f64>,
    pub exact_equal: Option<bool>,
    /// `(row, column)` of the first differing entry in row-major order
    pub first_mismatch: Option<(usize, usize)>,
    pub mults: usize,
    pub adds: usize,
    pub tree: SkewTree,
}

impl VerifyReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).unwrap_or_default()
    }
}

fn write_tree(f: &mut fmt::Formatter<'_>, t: &SkewTree, depth: usize) -> fmt::Result {
    write!(f, "{:indent$}{} n={}", "", t.transform, t.size, indent = 2 * depth)?;
    if let Some(r) = &t.skew {
        write!(f, " r={r}")?;
    }
    writeln!(f)?;
    t.children.iter().try_for_each(|c| write_tree(f, c, depth + 1))
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} n={} ({:?} check): {}", self.transform, self.size, self.mode, if self.passed { "PASS" } else { "FAIL" })?;
        if let (Some(dev), Some(tol)) = (self.max_dev, self.tolerance) {
            writeln!(f, "max deviation: {dev:e} (tolerance {tol:e})")?;
        }
        if let Some(eq) = self.exact_equal {
            writeln!(f, "exactly equal: {eq}")?;
        }
        if let Some((r, c)) = self.first_mismatch {
            writeln!(f, "first mismatch at row {r}, column {c}")?;
        }
        writeln!(f, "mults: {}, adds: {}", self.mults, self.adds)?;
        writeln!(f, "recursion:")?;
        write_tree(f, &self.tree, 1)
    }
}

/// Compares the materialized plan with the oracle for its transform.
pub fn verify(plan: &TransformPlan, mode: Mode, tolerance: f64) -> Result<VerifyReport> {
    verify_with_cap(plan, mode, tolerance, DEFAULT_EXACT_CAP)
}

pub fn verify_with_cap(plan: &TransformPlan, mode: Mode, tolerance: f64, exact_cap: usize) -> Result<VerifyReport> {
    let n = plan.size;
    let OpCount { mults, adds } = count_ops(plan);
    let mut report = VerifyReport {
        transform: plan.transform.to_string(),
        size: n,
        mode,
        passed: false,
        max_dev: None,
        tolerance: None,
        exact_equal: None,
        first_mismatch: None,
        mults,
        adds,
        tree: plan.tree(),
    };
    match mode {
        Mode::Exact => {
            if n > exact_cap {
                return Err(Error::ExactSizeCap { n, cap: exact_cap });
            }
            let got = materialize_exact(plan);
            let want = oracle_exact(plan.transform, n)?;
            report.first_mismatch = (0..n * n).map(|i| (i / n, i % n)).find(|&(r, c)| got.get(r, c) != want.get(r, c));
            report.exact_equal = Some(report.first_mismatch.is_none());
            report.passed = report.first_mismatch.is_none();
        }
        Mode::Float => {
            let got = materialize_float(plan);
            let want = oracle_float(plan.transform, n)?;
            let mut max_dev = 0.0f64;
            for r in 0..n {
                for c in 0..n {
                    let dev = (got.get(r, c) - want.get(r, c)).abs();
                    if (dev.is_nan() || dev > tolerance) && report.first_mismatch.is_none() {
                        report.first_mismatch = Some((r, c));
                    }
                    max_dev = max_dev.max(dev);
                }
            }
            report.max_dev = Some(max_dev);
            report.tolerance = Some(tolerance);
            report.passed = report.first_mismatch.is_none();
        }
    }
    Ok(report)
}
