use crate::curvature::projective_distance;
use crate::error::{domain, Result};
use crate::solvers::general::general_solve_with;
use crate::solvers::solution::{EinsteinSolution, SolutionFamily, SolveOptions};
use crate::space::{GroupFamily, ModuleId};

/// One `general_solve` run on the common space, for the factor `k` with `s = (n-l)/k`.
#[derive(Clone, Debug)]
pub struct PlanRun {
    pub k: u64,
    pub s: usize,
    pub solutions: Vec<EinsteinSolution>,
}

/// A space `G(n)/G(l)` carrying at least `2p` distinct non-Jensen Einstein metrics.
#[derive(Clone, Debug)]
pub struct ManyMetricsPlan {
    pub family: GroupFamily,
    pub p: usize,
    pub n: u64,
    pub l: u64,
    pub factors: Vec<u64>,
    pub runs: Vec<PlanRun>,
    /// Certified non-Jensen metrics across all runs.
    pub metrics: Vec<EinsteinSolution>,
    /// Smallest pairwise distance between the metrics' canonical vectors.
    pub min_separation: f64,
}

impl ManyMetricsPlan {
    pub fn ok(&self) -> bool {
        self.metrics.len() >= 2 * self.p && self.min_separation > 1e-6
    }
}

fn primes_from(start: u64, count: usize) -> Vec<u64> {
    let is_prime = |n: u64| n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0);
    (start..).filter(|&n| is_prime(n)).take(count).collect()
}

/// The metric as a function on coordinate pairs `(i, j)` of the defining
/// representation, scaled to unit maximum. Metrics built from different block
/// splittings of the same space become comparable this way.
pub fn canonical_vector(sol: &EinsteinSolution) -> Vec<f64> {
    let spec = &sol.spec;
    let block: Vec<usize> = spec
        .blocks()
        .iter()
        .enumerate()
        .flat_map(|(i, &k)| std::iter::repeat(i + 1).take(k as usize))
        .collect();
    let values = sol.values_f64();
    let modules = spec.modules();
    let value = |id: ModuleId| modules.iter().position(|m| *m == id).map(|i| values[i]);
    let diag_pairs = spec.family() == GroupFamily::Symplectic;
    let mut out = Vec::new();
    for i in 0..block.len() {
        let first = if diag_pairs { i } else { i + 1 };
        for j in first..block.len() {
            let (a, b) = (block[i], block[j]);
            let id = if a == b { ModuleId::Diagonal(a) } else { ModuleId::OffDiagonal(a, b) };
            if let Some(v) = value(id) {
                out.push(v);
            }
        }
    }
    let m = out.iter().cloned().fold(f64::MIN, f64::max);
    out.iter().map(|v| v / m).collect()
}

pub fn plan_many_metrics(family: GroupFamily, p: usize) -> Result<ManyMetricsPlan> {
    plan_many_metrics_with(family, p, &SolveOptions::default())
}

/// Smallest instance found by the prime-factor construction: `n - l` is a
/// multiple of `p` distinct primes, each below `l` (orthogonal) or at most `l`
/// (symplectic), with every quotient `s >= 2`.
pub fn plan_many_metrics_with(family: GroupFamily, p: usize, opts: &SolveOptions) -> Result<ManyMetricsPlan> {
    if p == 0 {
        return domain("p must be positive");
    }
    let factors = match family {
        GroupFamily::Orthogonal => primes_from(3, p),
        GroupFamily::Symplectic => primes_from(2, p),
    };
    let product: u64 = factors.iter().product();
    let largest = *factors.last().expect("p >= 1");
    let multiple = (2 * largest).div_ceil(product).max(1);
    let span = product * multiple;
    let l = match family {
        GroupFamily::Orthogonal => largest + 1,
        GroupFamily::Symplectic => largest,
    };
    let n = span + l;

    let mut runs = Vec::new();
    for &k in &factors {
        let s = (span / k) as usize;
        let solutions = general_solve_with(family, s, k, l, opts)?;
        runs.push(PlanRun { k, s, solutions });
    }
    let metrics: Vec<EinsteinSolution> = runs
        .iter()
        .flat_map(|r| r.solutions.iter())
        .filter(|s| s.family == SolutionFamily::GeneralXneY && s.certified())
        .cloned()
        .collect();
    let vecs: Vec<Vec<f64>> = metrics.iter().map(canonical_vector).collect();
    let mut min_separation = f64::INFINITY;
    for i in 0..vecs.len() {
        for j in i + 1..vecs.len() {
            min_separation = min_separation.min(projective_distance(&vecs[i], &vecs[j]));
        }
    }
    Ok(ManyMetricsPlan { family, p, n, l, factors, runs, metrics, min_separation })
}
