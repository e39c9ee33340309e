use std::fmt;

use crate::algebra::{default_eps, QuadSurd, RootInterval};
use crate::curvature::{
    full_system_residual, projective_distance, ConstrainedFunctional, EinsteinCertificate, MetricParams,
};
use crate::error::Result;
use crate::scalar::Scalar;
use crate::space::{GroupFamily, SpaceSpec};
use crate::{ExactMetric, Rational, SurdMetric, DEFAULT_TOLERANCE};

/// Which construction produced a solution.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SolutionFamily {
    Jensen,
    QuarticSO,
    QuarticSp,
    GeneralXeqY,
    GeneralXneY,
}

impl SolutionFamily {
    pub fn label(self) -> &'static str {
        match self {
            Self::Jensen => "jensen",
            Self::QuarticSO => "quartic-so",
            Self::QuarticSp => "quartic-sp",
            Self::GeneralXeqY => "general-x-eq-y",
            Self::GeneralXneY => "general-x-ne-y",
        }
    }

    pub fn is_jensen_type(self) -> bool {
        matches!(self, Self::Jensen | Self::GeneralXeqY)
    }
}

impl fmt::Display for SolutionFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// How the metric is known.
#[derive(Clone, Debug)]
pub enum Exactness {
    /// Every coordinate lies in `Q(sqrt D)` and was checked in exact arithmetic.
    ClosedForm(SurdMetric),
    /// Recovered from a root known to lie in `interval`, refined to a rational.
    IsolatedRoot { interval: RootInterval },
}

/// Knobs shared by the solvers.
#[derive(Clone, Debug)]
pub struct SolveOptions {
    /// Root refinement width.
    pub eps: Rational,
    /// Residual acceptance bound.
    pub tolerance: f64,
    /// Decimal digits used when rationalizing surd coordinates.
    pub digits: u32,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self { eps: default_eps(), tolerance: DEFAULT_TOLERANCE, digits: 40 }
    }
}

/// An invariant Einstein metric with its certification record.
#[derive(Clone, Debug)]
pub struct EinsteinSolution {
    pub spec: SpaceSpec,
    /// Exact or refined coordinates, in the normalization of the construction.
    pub metric: ExactMetric,
    pub family: SolutionFamily,
    /// Lagrange certificate on the full functional of `spec`.
    pub certificate: EinsteinCertificate,
    /// Certificate on the three-parameter functional, when one applies.
    pub reduced_certificate: Option<EinsteinCertificate>,
    /// Residual of the five-parameter polynomial system, when `s = 2` and `t = 1`.
    pub system_residual: Option<f64>,
    pub exactness: Exactness,
    /// Anything that failed; empty for a certified solution.
    pub flags: Vec<String>,
}

impl EinsteinSolution {
    pub fn certified(&self) -> bool {
        self.flags.is_empty()
    }

    pub fn values_f64(&self) -> Vec<f64> {
        self.metric.to_f64()
    }

    /// Coordinates scaled to unit maximum.
    pub fn normalized(&self) -> Vec<f64> {
        let v = self.values_f64();
        let m = v.iter().cloned().fold(f64::MIN, f64::max);
        v.iter().map(|x| x / m).collect()
    }

    pub fn distance(&self, other: &Self) -> f64 {
        projective_distance(&self.values_f64(), &other.values_f64())
    }
}

/// Everything needed to certify one candidate metric.
pub(crate) struct Candidate<'a, T> {
    pub spec: &'a SpaceSpec,
    pub full: &'a ConstrainedFunctional,
    pub values: Vec<T>,
    pub reduced: Option<(&'a ConstrainedFunctional, [T; 3])>,
    pub five: Option<(GroupFamily, (u64, u64, u64), [T; 5])>,
}

impl<T: Scalar> Candidate<'_, T> {
    /// Runs every applicable check and collects failures as flags.
    pub fn certify(
        &self,
        tolerance: f64,
    ) -> (EinsteinCertificate, Option<EinsteinCertificate>, Option<f64>, Vec<String>) {
        let mut flags = Vec::new();
        let cert = self.full.certify(&self.values, tolerance);
        if !cert.is_einstein() {
            flags.push(format!("Lagrange residual {:.3e} above tolerance", cert.residual_inf));
        }
        let reduced = self.reduced.as_ref().map(|(f, x)| f.certify(x, tolerance));
        if let Some(r) = &reduced {
            if !r.is_einstein() {
                flags.push(format!("reduced residual {:.3e} above tolerance", r.residual_inf));
            }
        }
        let system = self.five.as_ref().map(|(family, ks, x)| {
            let r = full_system_residual(*family, *ks, x);
            if T::EXACT && r == T::zero() {
                0.0
            } else {
                r.to_f64()
            }
        });
        if let Some(r) = system {
            if !(r < tolerance) {
                flags.push(format!("five-parameter system residual {r:.3e} above tolerance"));
            }
        }
        (cert, reduced, system, flags)
    }
}

pub(crate) fn surd_candidate_solution(
    cand: Candidate<'_, QuadSurd>,
    family: SolutionFamily,
    opts: &SolveOptions,
) -> Result<EinsteinSolution> {
    let (certificate, reduced_certificate, system_residual, flags) = cand.certify(opts.tolerance);
    let surd = MetricParams::new(cand.spec, cand.values.clone())?;
    let metric = surd.map(|v| v.to_rational_approx(opts.digits));
    Ok(EinsteinSolution {
        spec: cand.spec.clone(),
        metric,
        family,
        certificate,
        reduced_certificate,
        system_residual,
        exactness: Exactness::ClosedForm(surd),
        flags,
    })
}

pub(crate) fn root_candidate_solution(
    cand: Candidate<'_, Rational>,
    family: SolutionFamily,
    interval: RootInterval,
    opts: &SolveOptions,
    mut extra_flags: Vec<String>,
) -> Result<EinsteinSolution> {
    let (certificate, reduced_certificate, system_residual, mut flags) = cand.certify(opts.tolerance);
    flags.append(&mut extra_flags);
    Ok(EinsteinSolution {
        spec: cand.spec.clone(),
        metric: MetricParams::new(cand.spec, cand.values.clone())?,
        family,
        certificate,
        reduced_certificate,
        system_residual,
        exactness: Exactness::IsolatedRoot { interval },
        flags,
    })
}

/// Sorts by the normalized last coordinate and drops projective duplicates (within `1e-9`).
pub fn finalize(mut sols: Vec<EinsteinSolution>) -> Vec<EinsteinSolution> {
    let key = |s: &EinsteinSolution| *s.normalized().last().unwrap_or(&0.0);
    sols.sort_by(|a, b| key(a).total_cmp(&key(b)).then(a.family.cmp(&b.family)));
    let mut out: Vec<EinsteinSolution> = Vec::with_capacity(sols.len());
    for s in sols {
        if !out.iter().any(|o| o.spec == s.spec && o.distance(&s) < 1e-9) {
            out.push(s);
        }
    }
    out
}
