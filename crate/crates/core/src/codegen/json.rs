//! Plan files.
//!
//! ```json
//! {"transform":"dct4_poly","size":2,"skew":"1/2","stages":[
//!   {"kind":"add_scale_block","m":1,"a":{"level":1,"coeffs":["0/1","1/1"],"approx":1.414…,"cos_terms":[[1,"1/1"]]}},
//!   …]}
//! ```
//!
//! Constants keep the power-basis `coeffs` up to [`COEFFS_MAX_LEVEL`]; the sparse
//! `cos_terms` (index 0 is the constant, index `i` multiplies `2cos(iπ / 2^(level+1))`)
//! are always written and take precedence when reading.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_field::{DyadicRational, FieldElement, Rational};
use crate::planner::{Stage, Transform, TransformPlan};

/// Highest level whose dense power-basis coefficients are written out.
pub const COEFFS_MAX_LEVEL: u32 = 8;

#[derive(Serialize, Deserialize)]
struct ConstantDoc {
    level: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    coeffs: Option<Vec<String>>,
    #[serde(default)]
    approx: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    cos_terms: Option<Vec<(usize, String)>>,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum StageDoc {
    Identity,
    Permutation { indices: Vec<usize> },
    Diagonal { entries: Vec<ConstantDoc> },
    ButterflyPair { m: usize },
    AddScaleBlock { m: usize, a: ConstantDoc },
    Dct2Merge { m: usize },
    BlockSplit { children: Vec<PlanDoc> },
}

#[derive(Serialize, Deserialize)]
struct PlanDoc {
    transform: String,
    size: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    skew: Option<String>,
    stages: Vec<StageDoc>,
}

fn constant_doc(c: &FieldElement) -> ConstantDoc {
    ConstantDoc {
        level: c.level(),
        coeffs: (c.level() <= COEFFS_MAX_LEVEL).then(|| c.power_coeffs().iter().map(Rational::to_fraction_string).collect()),
        approx: Some(c.real_value()),
        cos_terms: Some(c.cos_terms().map(|(i, q)| (i, q.to_fraction_string())).collect()),
    }
}

fn parse_constant(doc: ConstantDoc) -> Result<FieldElement> {
    match (doc.cos_terms, doc.coeffs) {
        (Some(terms), coeffs) => {
            let terms = terms.into_iter().map(|(i, q)| Ok((i, q.parse()?))).collect::<Result<Vec<_>>>()?;
            let e = FieldElement::from_cos_terms(doc.level, terms)?;
            if let Some(coeffs) = coeffs {
                let coeffs = coeffs.iter().map(|q| q.parse()).collect::<Result<Vec<Rational>>>()?;
                if FieldElement::from_power_coeffs(doc.level, &coeffs)? != e {
                    return Err(Error::MalformedPlan("`coeffs` and `cos_terms` disagree".into()));
                }
            }
            Ok(e)
        }
        (None, Some(coeffs)) => {
            let coeffs = coeffs.iter().map(|q| q.parse()).collect::<Result<Vec<Rational>>>()?;
            FieldElement::from_power_coeffs(doc.level, &coeffs)
        }
        (None, None) => Err(Error::MalformedPlan("constant without `coeffs` or `cos_terms`".into())),
    }
}

fn plan_doc(plan: &TransformPlan) -> PlanDoc {
    PlanDoc {
        transform: plan.transform.name().to_string(),
        size: plan.size,
        skew: plan.transform.skew().map(|r| r.to_string()),
        stages: plan
            .stages
            .iter()
            .map(|s| match s {
                Stage::Identity => StageDoc::Identity,
                Stage::Permutation(idx) => StageDoc::Permutation { indices: idx.clone() },
                Stage::Diagonal(d) => StageDoc::Diagonal { entries: d.iter().map(constant_doc).collect() },
                Stage::ButterflyPair { m } => StageDoc::ButterflyPair { m: *m },
                Stage::AddScaleBlock { m, a } => StageDoc::AddScaleBlock { m: *m, a: constant_doc(a) },
                Stage::Dct2Merge { m } => StageDoc::Dct2Merge { m: *m },
                Stage::BlockSplit(a, b) => StageDoc::BlockSplit { children: vec![plan_doc(a), plan_doc(b)] },
            })
            .collect(),
    }
}

fn parse_plan(doc: PlanDoc) -> Result<TransformPlan> {
    let skew = doc.skew.as_deref().map(str::parse::<DyadicRational>).transpose()?;
    let transform = Transform::from_name(&doc.transform, skew)?;
    if skew.is_some() && transform.skew().is_none() {
        return Err(Error::MalformedPlan(format!("{} takes no skew", doc.transform)));
    }
    let stages = doc
        .stages
        .into_iter()
        .map(|s| {
            Ok(match s {
                StageDoc::Identity => Stage::Identity,
                StageDoc::Permutation { indices } => Stage::Permutation(indices),
                StageDoc::Diagonal { entries } => {
                    Stage::Diagonal(entries.into_iter().map(parse_constant).collect::<Result<_>>()?)
                }
                StageDoc::ButterflyPair { m } => Stage::ButterflyPair { m },
                StageDoc::AddScaleBlock { m, a } => Stage::AddScaleBlock { m, a: parse_constant(a)? },
                StageDoc::Dct2Merge { m } => Stage::Dct2Merge { m },
                StageDoc::BlockSplit { children } => {
                    let [a, b]: [PlanDoc; 2] = children
                        .try_into()
                        .map_err(|_| Error::MalformedPlan("block_split needs exactly two children".into()))?;
                    Stage::BlockSplit(Box::new(parse_plan(a)?), Box::new(parse_plan(b)?))
                }
            })
        })
        .collect::<Result<Vec<_>>>()?;
    TransformPlan::new(transform, doc.size, stages)
}

pub fn to_json(plan: &TransformPlan) -> String {
    serde_json::to_string(&plan_doc(plan)).expect("plan documents always serialize")
}

pub fn to_json_pretty(plan: &TransformPlan) -> String {
    serde_json::to_string_pretty(&plan_doc(plan)).expect("plan documents always serialize")
}

pub fn from_json(text: &str) -> Result<TransformPlan> {
    parse_plan(serde_json::from_str(text)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planner::{plan_dct2, plan_dct4, plan_dct4_poly};

    #[test]
    fn trivial_plan_text() {
        let plan = plan_dct4_poly(1, DyadicRational::HALF).unwrap();
        assert_eq!(
            to_json(&plan),
            r#"{"transform":"dct4_poly","size":1,"skew":"1/2","stages":[{"kind":"identity"}]}"#
        );
    }

    #[test]
    fn round_trip() {
        for plan in [plan_dct4(8).unwrap(), plan_dct2(16).unwrap(), plan_dct4_poly(4, "3/8".parse().unwrap()).unwrap()] {
            assert_eq!(from_json(&to_json(&plan)).unwrap(), plan);
        }
    }

    #[test]
    fn sqrt2_constant() {
        let text = to_json(&plan_dct4_poly(2, DyadicRational::HALF).unwrap());
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        let a = &v["stages"][0]["a"];
        assert_eq!(v["stages"][0]["kind"], "add_scale_block");
        assert!((a["approx"].as_f64().unwrap() - std::f64::consts::SQRT_2).abs() < 1e-15);
        assert_eq!(a["coeffs"], serde_json::json!(["0/1", "1/1"]));
    }

    #[test]
    fn power_coefficients_alone_are_enough() {
        let text = r#"{"transform":"dct2_poly","size":2,"stages":[
            {"kind":"diagonal","entries":[{"level":1,"coeffs":["1/2","0/1"]},{"level":0,"coeffs":["1"]}]}]}"#;
        let plan = from_json(text).unwrap();
        assert!(matches!(&plan.stages[0], Stage::Diagonal(d) if d[0] == FieldElement::from_rational("1/2".parse().unwrap())));
    }

    #[test]
    fn malformed_documents() {
        for bad in [
            r#"{"transform":"dct4","size":3,"stages":[{"kind":"identity"}]}"#,
            r#"{"transform":"dct4","size":2,"stages":[{"kind":"butterfly_pair","m":2}]}"#,
            r#"{"transform":"dct4","size":2,"stages":[{"kind":"twiddle"}]}"#,
            r#"{"transform":"dct4","size":2,"skew":"1/4","stages":[{"kind":"identity"}]}"#,
            r#"{"transform":"dct4_poly","size":2,"skew":"3/2","stages":[{"kind":"identity"}]}"#,
            r#"{"transform":"dct2","size":2,"stages":[{"kind":"block_split","children":[]}]}"#,
            r#"{"transform":"dct2","size":1,"stages":[{"kind":"diagonal","entries":[{"level":1,"coeffs":["1"],"cos_terms":[[1,"1"]]}]}]}"#,
            "not json",
        ] {
            assert!(from_json(bad).is_err(), "{bad}");
        }
    }
}
