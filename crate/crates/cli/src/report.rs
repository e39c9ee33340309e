//! JSON shapes shared by `solve`, `plan` and `verify`.

use std::collections::BTreeMap;

use homog_einstein::algebra::to_decimal_string;
use homog_einstein::solvers::EinsteinSolution;
use homog_einstein::SpaceSpec;
use serde::{Deserialize, Serialize};

/// Digits after the decimal point in serialized metric parameters.
pub const PARAM_DIGITS: u32 = 40;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct SpecJson {
    pub family: String,
    pub blocks: Vec<u64>,
    pub s: usize,
    #[serde(default)]
    pub t: Option<usize>,
}

impl From<&SpaceSpec> for SpecJson {
    fn from(spec: &SpaceSpec) -> Self {
        Self { family: spec.family().tag().to_string(), blocks: spec.blocks().to_vec(), s: spec.s(), t: Some(spec.t()) }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SolutionJson {
    #[serde(default)]
    pub family_label: Option<String>,
    /// Module id (`p1`, `p(1,2)`, ...) to an exact decimal string.
    pub params: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub einstein_constant: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residual: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scalar_curvature: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub system_residual: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact: Option<bool>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub flags: Vec<String>,
}

impl From<&EinsteinSolution> for SolutionJson {
    fn from(sol: &EinsteinSolution) -> Self {
        let params = sol.metric.iter().map(|(id, v)| (id.to_string(), to_decimal_string(v, PARAM_DIGITS))).collect();
        Self {
            family_label: Some(sol.family.label().to_string()),
            params,
            lambda: Some(sol.certificate.lambda),
            einstein_constant: Some(sol.certificate.einstein_constant),
            residual: Some(sol.certificate.residual_inf),
            scalar_curvature: Some(sol.certificate.scalar_curvature),
            system_residual: sol.system_residual,
            exact: Some(matches!(sol.exactness, homog_einstein::solvers::Exactness::ClosedForm(_))),
            flags: sol.flags.clone(),
        }
    }
}

/// Output of `solve`, also accepted by `verify`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SolveReport {
    pub spec: SpecJson,
    pub solutions: Vec<SolutionJson>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

/// A single metric, the minimal input of `verify`.
#[derive(Clone, Debug, Deserialize)]
pub struct MetricFile {
    pub spec: SpecJson,
    pub params: BTreeMap<String, String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PlanRunJson {
    pub k: u64,
    pub s: usize,
    pub solutions: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct PlanMetricJson {
    pub spec: SpecJson,
    #[serde(flatten)]
    pub solution: SolutionJson,
}

#[derive(Clone, Debug, Serialize)]
pub struct PlanReport {
    pub family: String,
    pub p: usize,
    pub n: u64,
    pub l: u64,
    pub factors: Vec<u64>,
    pub runs: Vec<PlanRunJson>,
    pub metrics: Vec<PlanMetricJson>,
    pub min_separation: f64,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyJson {
    pub spec: SpecJson,
    pub lambda: f64,
    pub einstein_constant: f64,
    pub residual: f64,
    pub scalar_curvature: f64,
    pub volume: f64,
    pub tolerance: f64,
    pub exact_zero: Option<bool>,
    pub einstein: bool,
}
