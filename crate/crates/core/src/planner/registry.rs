//! Transform families selectable by name at runtime.

use super::{plan_dct2, plan_dct2_poly, plan_dct4, plan_dct4_poly, TransformPlan};
use crate::error::{Error, Result};
use crate::exact_field::DyadicRational;
use crate::executor::OpCount;

pub trait TransformFamily: Sync {
    /// Registry key, e.g. `dct4-poly`.
    fn name(&self) -> &'static str;
    fn summary(&self) -> &'static str;
    fn takes_skew(&self) -> bool {
        false
    }
    fn plan(&self, n: usize, skew: Option<DyadicRational>) -> Result<TransformPlan>;
    /// Operation count of the fast algorithm in closed form.
    fn expected_ops(&self, n: usize) -> OpCount;
}

fn no_skew(name: &str, skew: Option<DyadicRational>) -> Result<()> {
    match skew {
        Some(r) => Err(Error::InvalidArgument(format!("{name} takes no skew (got {r})"))),
        None => Ok(()),
    }
}

fn log2(n: usize) -> usize {
    n.trailing_zeros() as usize
}

fn dct4_poly_ops(n: usize) -> OpCount {
    OpCount { mults: n / 2 * log2(n), adds: 3 * n / 2 * log2(n) }
}

fn dct2_poly_ops(n: usize) -> OpCount {
    if n <= 1 {
        return OpCount::default();
    }
    let (rest, tail) = (dct2_poly_ops(n / 2), dct4_poly_ops(n / 2));
    OpCount { mults: rest.mults + tail.mults, adds: n + rest.adds + tail.adds }
}

struct Dct4Poly;
struct Dct4;
struct Dct2Poly;
struct Dct2;

impl TransformFamily for Dct4Poly {
    fn name(&self) -> &'static str {
        "dct4-poly"
    }
    fn summary(&self) -> &'static str {
        "unscaled skew DCT-4(r), default r = 1/2"
    }
    fn takes_skew(&self) -> bool {
        true
    }
    fn plan(&self, n: usize, skew: Option<DyadicRational>) -> Result<TransformPlan> {
        plan_dct4_poly(n, skew.unwrap_or(DyadicRational::HALF))
    }
    fn expected_ops(&self, n: usize) -> OpCount {
        dct4_poly_ops(n)
    }
}

impl TransformFamily for Dct4 {
    fn name(&self) -> &'static str {
        "dct4"
    }
    fn summary(&self) -> &'static str {
        "DCT-4: unscaled DCT-4(1/2) followed by a diagonal"
    }
    fn plan(&self, n: usize, skew: Option<DyadicRational>) -> Result<TransformPlan> {
        no_skew(self.name(), skew)?;
        plan_dct4(n)
    }
    fn expected_ops(&self, n: usize) -> OpCount {
        let base = dct4_poly_ops(n);
        OpCount { mults: base.mults + n, ..base }
    }
}

impl TransformFamily for Dct2Poly {
    fn name(&self) -> &'static str {
        "dct2-poly"
    }
    fn summary(&self) -> &'static str {
        "unscaled DCT-2 polynomial transform"
    }
    fn plan(&self, n: usize, skew: Option<DyadicRational>) -> Result<TransformPlan> {
        no_skew(self.name(), skew)?;
        plan_dct2_poly(n)
    }
    fn expected_ops(&self, n: usize) -> OpCount {
        dct2_poly_ops(n)
    }
}

impl TransformFamily for Dct2 {
    fn name(&self) -> &'static str {
        "dct2"
    }
    fn summary(&self) -> &'static str {
        "DCT-2: unscaled transform followed by a diagonal"
    }
    fn plan(&self, n: usize, skew: Option<DyadicRational>) -> Result<TransformPlan> {
        no_skew(self.name(), skew)?;
        plan_dct2(n)
    }
    fn expected_ops(&self, n: usize) -> OpCount {
        let base = dct2_poly_ops(n);
        OpCount { mults: base.mults + n.saturating_sub(1), ..base }
    }
}

static FAMILIES: [&dyn TransformFamily; 4] = [&Dct4, &Dct4Poly, &Dct2, &Dct2Poly];

pub fn registry() -> &'static [&'static dyn TransformFamily] {
    &FAMILIES
}

/// Accepts `dct4-poly` and `dct4_poly` alike.
pub fn lookup(name: &str) -> Result<&'static dyn TransformFamily> {
    let key = name.replace('_', "-");
    FAMILIES
        .iter()
        .copied()
        .find(|f| f.name() == key)
        .ok_or_else(|| Error::InvalidArgument(format!("unknown transform `{name}`")))
}
