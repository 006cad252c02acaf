//! Transform plans: a transform matrix written as an ordered product of sparse stages.
//!
//! Stages are listed input-first, so a plan `[B, S, P]` is the matrix `P · S · B`.
//! Every fast algorithm here has the shape
//!
//! ```text
//! polynomial transform(b, α) = P · (child_1 ⊕ child_2) · B
//! ```
//!
//! where `B` re-expresses the basis of the parent algebra in the bases of the two
//! factor algebras and `P` sorts the children's zeros back into increasing angle.

mod build;
mod registry;

pub use build::{plan_dct2, plan_dct2_poly, plan_dct4, plan_dct4_poly, reachable_skews};
pub use registry::{lookup, registry, TransformFamily};

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact_field::{DyadicRational, FieldElement};

pub use crate::exact_field::DyadicRational as Skew;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Transform {
    /// unscaled skew DCT-4(r): the polynomial transform of `2T_n - 2cos(rπ)` in the V basis
    Dct4Poly(DyadicRational),
    Dct4,
    /// unscaled DCT-2: the polynomial transform of `(x - 1) U_{n-1}` in the V basis
    Dct2Poly,
    Dct2,
}

impl Transform {
    pub fn name(&self) -> &'static str {
        match self {
            Transform::Dct4Poly(_) => "dct4_poly",
            Transform::Dct4 => "dct4",
            Transform::Dct2Poly => "dct2_poly",
            Transform::Dct2 => "dct2",
        }
    }

    pub fn skew(&self) -> Option<DyadicRational> {
        match self {
            Transform::Dct4Poly(r) => Some(*r),
            _ => None,
        }
    }

    pub fn from_name(name: &str, skew: Option<DyadicRational>) -> Result<Self> {
        Ok(match name.replace('-', "_").as_str() {
            "dct4_poly" => Transform::Dct4Poly(skew.unwrap_or(DyadicRational::HALF)),
            "dct4" => Transform::Dct4,
            "dct2_poly" => Transform::Dct2Poly,
            "dct2" => Transform::Dct2,
            other => return Err(Error::InvalidArgument(format!("unknown transform `{other}`"))),
        })
    }
}

impl fmt::Display for Transform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Transform::Dct4Poly(r) => write!(f, "dct4_poly({r})"),
            other => f.write_str(other.name()),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Stage {
    Identity,
    /// `output[i] = input[indices[i]]`
    Permutation(Vec<usize>),
    Diagonal(Vec<FieldElement>),
    /// `[I I; I -I]` on `2m` points
    ButterflyPair { m: usize },
    /// `[I -J; 0 aI]` on `2m` points
    AddScaleBlock { m: usize, a: FieldElement },
    /// `[I J; I -J]` on `2m` points
    Dct2Merge { m: usize },
    /// direct sum of two sub-plans
    BlockSplit(Box<TransformPlan>, Box<TransformPlan>),
}

impl Stage {
    pub fn kind(&self) -> &'static str {
        match self {
            Stage::Identity => "identity",
            Stage::Permutation(_) => "permutation",
            Stage::Diagonal(_) => "diagonal",
            Stage::ButterflyPair { .. } => "butterfly_pair",
            Stage::AddScaleBlock { .. } => "add_scale_block",
            Stage::Dct2Merge { .. } => "dct2_merge",
            Stage::BlockSplit(..) => "block_split",
        }
    }

    /// Largest number of inputs feeding one output.
    pub fn fan_in(&self) -> usize {
        match self {
            Stage::Identity | Stage::Permutation(_) | Stage::Diagonal(_) => 1,
            Stage::ButterflyPair { .. } | Stage::AddScaleBlock { .. } | Stage::Dct2Merge { .. } => 2,
            Stage::BlockSplit(a, b) => a.max_fan_in().max(b.max_fan_in()),
        }
    }

    fn check_size(&self, n: usize) -> Result<()> {
        let bad = |what: String| Err(Error::MalformedPlan(format!("{} stage on {n} points: {what}", self.kind())));
        match self {
            Stage::Identity => Ok(()),
            Stage::Permutation(idx) => {
                if idx.len() != n {
                    return bad(format!("{} indices", idx.len()));
                }
                let mut seen = vec![false; n];
                for &i in idx {
                    if i >= n || std::mem::replace(&mut seen[i], true) {
                        return bad("indices are not a bijection".into());
                    }
                }
                Ok(())
            }
            Stage::Diagonal(d) if d.len() != n => bad(format!("{} entries", d.len())),
            Stage::Diagonal(_) => Ok(()),
            Stage::ButterflyPair { m } | Stage::AddScaleBlock { m, .. } | Stage::Dct2Merge { m } => {
                if 2 * m != n {
                    return bad(format!("m = {m}"));
                }
                Ok(())
            }
            Stage::BlockSplit(a, b) => {
                if a.size + b.size != n {
                    return bad(format!("children of size {} and {}", a.size, b.size));
                }
                Ok(())
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TransformPlan {
    pub transform: Transform,
    pub size: usize,
    pub stages: Vec<Stage>,
}

/// Skew parameters along the recursion, for reports.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SkewTree {
    pub transform: String,
    pub size: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skew: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<SkewTree>,
}

impl TransformPlan {
    /// Checks that every stage is a square map on `size` points and permutations are bijections.
    pub fn new(transform: Transform, size: usize, stages: Vec<Stage>) -> Result<Self> {
        if size == 0 || !size.is_power_of_two() {
            return Err(Error::NotPowerOfTwo(size));
        }
        if stages.is_empty() {
            return Err(Error::MalformedPlan("a plan needs at least one stage".into()));
        }
        for s in &stages {
            s.check_size(size)?;
        }
        Ok(TransformPlan { transform, size, stages })
    }

    /// Number of nested block splits.
    pub fn depth(&self) -> usize {
        self.stages
            .iter()
            .map(|s| match s {
                Stage::BlockSplit(a, b) => 1 + a.depth().max(b.depth()),
                _ => 0,
            })
            .max()
            .unwrap_or(0)
    }

    pub fn max_fan_in(&self) -> usize {
        self.stages.iter().map(Stage::fan_in).max().unwrap_or(1)
    }

    /// Every constant in the plan, children included.
    pub fn constants(&self) -> Vec<&FieldElement> {
        let mut out = Vec::new();
        self.collect_constants(&mut out);
        out
    }

    fn collect_constants<'a>(&'a self, out: &mut Vec<&'a FieldElement>) {
        for s in &self.stages {
            match s {
                Stage::Diagonal(d) => out.extend(d.iter()),
                Stage::AddScaleBlock { a, .. } => out.push(a),
                Stage::BlockSplit(x, y) => {
                    x.collect_constants(out);
                    y.collect_constants(out);
                }
                _ => {}
            }
        }
    }

    /// Highest tower level among the constants.
    pub fn max_level(&self) -> u32 {
        self.constants().iter().map(|c| c.level()).max().unwrap_or(0)
    }

    pub fn tree(&self) -> SkewTree {
        let children = self
            .stages
            .iter()
            .filter_map(|s| match s {
                Stage::BlockSplit(a, b) => Some([a.tree(), b.tree()]),
                _ => None,
            })
            .flatten()
            .collect();
        SkewTree {
            transform: self.transform.name().to_string(),
            size: self.size,
            skew: self.transform.skew().map(|r| r.to_string()),
            children,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn malformed_stages_are_rejected() {
        let t = Transform::Dct2Poly;
        assert!(TransformPlan::new(t, 3, vec![Stage::Identity]).is_err());
        assert!(TransformPlan::new(t, 2, vec![]).is_err());
        assert!(TransformPlan::new(t, 2, vec![Stage::Permutation(vec![0, 0])]).is_err());
        assert!(TransformPlan::new(t, 4, vec![Stage::ButterflyPair { m: 1 }]).is_err());
        assert!(TransformPlan::new(t, 2, vec![Stage::Diagonal(vec![FieldElement::one()])]).is_err());
        assert!(TransformPlan::new(t, 2, vec![Stage::Permutation(vec![1, 0])]).is_ok());
    }

    #[test]
    fn transform_names() {
        assert_eq!(Transform::from_name("dct4-poly", None).unwrap(), Transform::Dct4Poly(DyadicRational::HALF));
        assert_eq!(Transform::from_name("dct2", None).unwrap().name(), "dct2");
        assert!(Transform::from_name("dst1", None).is_err());
    }
}
