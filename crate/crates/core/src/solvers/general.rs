use num_traits::{One, Zero};

use crate::algebra::{isolate_positive_roots, rat, refine_root, QuadSurd};
use crate::curvature::{einstein_functional_unchecked, symmetric_metric, three_block_form, GeneralFamilyCoeffs};
use crate::error::Result;
use crate::solvers::jensen::surd_pair;
use crate::solvers::solution::{
    finalize, root_candidate_solution, surd_candidate_solution, Candidate, EinsteinSolution, SolutionFamily,
    SolveOptions,
};
use crate::space::{GroupFamily, SpaceSpec};
use crate::{Rational, RationalPoly};

/// Both reduction branches of the critical-point system of `F` on `G = const`.
#[derive(Clone, Debug)]
pub struct GeneralReduction {
    pub coeffs: GeneralFamilyCoeffs,
    /// `r(a+d) w^2 - p c w + e(2p+2q+r)` in `w = z/x`, for solutions with `x = y`.
    pub x_eq_y_quadratic: RationalPoly,
    /// Quartic in `u = z/y` for solutions with `x != y`.
    pub p_quartic: RationalPoly,
    /// Whether `d(q+2p) > aq`, which forces `y > x` on the second branch.
    pub forces_y_above_x: bool,
}

impl GeneralReduction {
    /// `x = a q y z^2 / (p f y^2 + d (q+2p) z^2)`.
    pub fn recover_x(&self, y: &Rational, z: &Rational) -> Rational {
        let c = &self.coeffs;
        let two = rat(2);
        let z2 = z * z;
        &c.a * &c.q * y * &z2 / (&c.p * &c.f * y * y + &c.d * (&c.q + &two * &c.p) * &z2)
    }
}

pub fn general_reduce(coeffs: &GeneralFamilyCoeffs) -> Result<GeneralReduction> {
    coeffs.check_relations()?;
    let GeneralFamilyCoeffs { a, b, c, d, e, f, p, q, r } = coeffs;
    let two = rat(2);
    let q2p = q + &two * p;
    let quadratic = RationalPoly::new(vec![
        e * (&two * p + &two * q + r),
        -(p * c),
        r * (a + d),
    ]);
    let quartic = RationalPoly::new(vec![
        (r + &two * q) * f * f * p,
        -(c * f * p * q),
        (&two * d * (r + q) * &q2p + (r + &two * p) * a * q) * f,
        -(&q2p * c * d * q),
        (&two * d * &q2p + b * q) * d * r,
    ]);
    Ok(GeneralReduction {
        coeffs: coeffs.clone(),
        x_eq_y_quadratic: quadratic,
        p_quartic: quartic,
        forces_y_above_x: d * &q2p > a * q,
    })
}

pub fn general_solve(family: GroupFamily, s: usize, k: u64, l: u64) -> Result<Vec<EinsteinSolution>> {
    general_solve_with(family, s, k, l, &SolveOptions::default())
}

/// Metrics `(x, y, z)` on `G(sk+l)/G(l)` from both reduction branches.
pub fn general_solve_with(
    family: GroupFamily,
    s: usize,
    k: u64,
    l: u64,
    opts: &SolveOptions,
) -> Result<Vec<EinsteinSolution>> {
    let coeffs = three_block_form(family, s, k, l)?;
    let red = general_reduce(&coeffs)?;
    let spec = SpaceSpec::three_block(family, s, k, l)?;
    let full = einstein_functional_unchecked(&spec)?;
    let reduced = coeffs.functional();
    let five_of = |x: &Rational, y: &Rational, z: &Rational| {
        (s == 2).then(|| (family, (k, k, l), [x.clone(), x.clone(), y.clone(), z.clone(), z.clone()]))
    };
    let mut sols = Vec::new();

    // x = y = 1, z = w
    let qd = red.x_eq_y_quadratic.coeffs();
    let (c0, c1, c2) = (&qd[0], &qd[1], &qd[2]);
    let disc = c1 * c1 - rat(4) * c2 * c0;
    let two_c2 = rat(2) * c2;
    for w in surd_pair(-c1 / &two_c2, Rational::one() / &two_c2, &disc) {
        if w.signum() <= 0 {
            continue;
        }
        let one = QuadSurd::from_rational(Rational::one());
        let values = symmetric_metric(&spec, one.clone(), one.clone(), w.clone())?.values().to_vec();
        let five = (s == 2).then(|| (family, (k, k, l), [one.clone(), one.clone(), one.clone(), w.clone(), w.clone()]));
        let cand = Candidate {
            spec: &spec,
            full: &full,
            values,
            reduced: Some((&reduced, [one.clone(), one, w])),
            five,
        };
        sols.push(surd_candidate_solution(cand, SolutionFamily::GeneralXeqY, opts)?);
    }

    // z = 1, y = 1/u, x recovered
    for iv in isolate_positive_roots(&red.p_quartic)? {
        let u = refine_root(&red.p_quartic, &iv, &opts.eps)?;
        let z = Rational::one();
        let y = Rational::one() / &u;
        let x = red.recover_x(&y, &z);
        let mut flags = Vec::new();
        if red.forces_y_above_x && y <= x {
            flags.push(format!("expected y > x, got y = {y}, x = {x}"));
        }
        if iv.multiplicity > 1 {
            flags.push(format!("root of multiplicity {}", iv.multiplicity));
        }
        if x <= Rational::zero() {
            flags.push("recovered x is not positive".into());
        }
        let values = symmetric_metric(&spec, x.clone(), y.clone(), z.clone())?.values().to_vec();
        let cand = Candidate {
            spec: &spec,
            full: &full,
            values,
            reduced: Some((&reduced, [x.clone(), y.clone(), z.clone()])),
            five: five_of(&x, &y, &z),
        };
        sols.push(root_candidate_solution(cand, SolutionFamily::GeneralXneY, iv, opts, flags)?);
    }
    Ok(finalize(sols))
}

/// `(x, y, z)` of a three-block solution, read off its full metric.
pub fn reduced_coordinates(sol: &EinsteinSolution) -> [f64; 3] {
    let v = sol.values_f64();
    let s = sol.spec.s();
    // x on p_1, y on p_(1,2), z on p_(1,s+1)
    let y_index = s;
    let z_index = s + s - 1;
    [v[0], v[y_index], v[z_index]]
}
