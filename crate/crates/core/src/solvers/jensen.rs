use num_traits::{One, Zero};

use crate::algebra::{rat, ratio, QuadSurd};
use crate::curvature::einstein_functional_unchecked;
use crate::error::{domain, Result};
use crate::solvers::solution::{finalize, surd_candidate_solution, Candidate, EinsteinSolution, SolutionFamily, SolveOptions};
use crate::space::{GroupFamily, SpaceSpec};
use crate::Rational;

/// Roots `x_12` (with `x_1 = 1`) of the Jensen quadratic, in closed form.
///
/// Orthogonal: `(k1-2) t^2 - 2(k1+k2-2) t + (k1+k2-1) = 0`, linear when `k1 = 2`.
/// Symplectic: `2(k1+1) t^2 - 4(k1+k2+1) t + (2k1+2k2+1) = 0`.
pub fn jensen_roots(family: GroupFamily, k1: u64, k2: u64) -> Result<Vec<QuadSurd>> {
    let min_k1 = match family {
        GroupFamily::Orthogonal => 2,
        GroupFamily::Symplectic => 1,
    };
    if k1 < min_k1 || k2 < 1 {
        return domain(format!("Jensen family needs k1 >= {min_k1}, k2 >= 1 (got {k1}, {k2})"));
    }
    let (k1, k2) = (k1 as i64, k2 as i64);
    Ok(match family {
        GroupFamily::Orthogonal if k1 == 2 => vec![QuadSurd::from_rational(ratio(k2 + 1, 2 * k2))],
        GroupFamily::Orthogonal => {
            let m = rat(k1 + k2 - 2);
            let disc = &m * &m - rat((k1 - 2) * (k1 + k2 - 1));
            let den = rat(k1 - 2);
            surd_pair(&m / &den, Rational::one() / &den, &disc)
        }
        GroupFamily::Symplectic => {
            let e = 1 + k1 + 2 * k2 + 2 * k1 * k2 + 2 * k2 * k2;
            let den = rat(2 * (k1 + 1));
            surd_pair(rat(2 * (k1 + k2 + 1)) / &den, Rational::one() / &den, &rat(2 * e))
        }
    })
}

/// `a +- b sqrt(disc)`, nothing for a negative discriminant, one root for zero.
pub(crate) fn surd_pair(a: Rational, b: Rational, disc: &Rational) -> Vec<QuadSurd> {
    if *disc < Rational::zero() {
        return Vec::new();
    }
    if disc.is_zero() {
        return vec![QuadSurd::from_rational(a)];
    }
    vec![
        QuadSurd::with_sqrt_of(a.clone(), -b.clone(), disc),
        QuadSurd::with_sqrt_of(a, b, disc),
    ]
}

pub fn jensen_solve(family: GroupFamily, k1: u64, k2: u64) -> Result<Vec<EinsteinSolution>> {
    jensen_solve_with(family, k1, k2, &SolveOptions::default())
}

/// Jensen metrics on `G(k1+k2)/G(k2)`, normalized by `x_1 = 1`.
pub fn jensen_solve_with(family: GroupFamily, k1: u64, k2: u64, opts: &SolveOptions) -> Result<Vec<EinsteinSolution>> {
    let roots = jensen_roots(family, k1, k2)?;
    let spec = SpaceSpec::new(family, vec![k1, k2], 1)?;
    let functional = einstein_functional_unchecked(&spec)?;
    let one = QuadSurd::from_rational(Rational::one());
    let sols = roots
        .into_iter()
        .filter(|t| t.signum() > 0)
        .map(|t| {
            let cand = Candidate {
                spec: &spec,
                full: &functional,
                values: vec![one.clone(), t],
                reduced: None,
                five: None,
            };
            surd_candidate_solution(cand, SolutionFamily::Jensen, opts)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(finalize(sols))
}
