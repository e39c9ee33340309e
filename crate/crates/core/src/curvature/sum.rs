use std::collections::{BTreeMap, BTreeSet};

use num_traits::One;

use crate::curvature::field::ScalarField;
use crate::curvature::functional::{ConstrainedFunctional, EinsteinCertificate};
use crate::curvature::metric::MetricParams;
use crate::error::{domain, Result};
use crate::scalar::Scalar;
use crate::space::{GroupFamily, ModuleId, SpaceSpec};
use crate::Rational;

fn require_generic(spec: &SpaceSpec) -> Result<()> {
    let check = spec.check_generic();
    if !check.generic {
        return Err(crate::Error::NonGeneric(format!(
            "{spec}: {}",
            check.reason.unwrap_or_default()
        )));
    }
    Ok(())
}

/// `S = 1/2 sum d_a / x_a - 1/4 sum [abc] x_c / (x_a x_b)` as a field in the
/// variables of `spec.modules()`, the triple sum running over ordered triples of summands.
pub fn scalar_curvature_field(spec: &SpaceSpec) -> Result<ScalarField> {
    require_generic(spec)?;
    build_field(spec)
}

fn build_field(spec: &SpaceSpec) -> Result<ScalarField> {
    let modules = spec.modules();
    let nv = modules.len();
    let index: BTreeMap<ModuleId, usize> =
        modules.iter().enumerate().map(|(i, m)| (*m, i)).collect();

    let mut field = ScalarField::zero(nv);
    let half = Rational::new(1.into(), 2.into());
    let quarter = Rational::new(1.into(), 4.into());
    for (i, id) in modules.iter().enumerate() {
        let mut e = vec![0; nv];
        e[i] = -1;
        let d = Rational::from_integer(spec.module_dimension(*id)?.into());
        field.add_term(&half * d, e);
    }

    for (ids, val) in spec.triple_symbols().iter() {
        let Some(idx) = ids.iter().map(|m| index.get(m).copied()).collect::<Option<Vec<_>>>()
        else {
            continue;
        };
        let orders: BTreeSet<[usize; 3]> = [
            [0, 1, 2],
            [0, 2, 1],
            [1, 0, 2],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
        ]
        .iter()
        .map(|p| [idx[p[0]], idx[p[1]], idx[p[2]]])
        .collect();
        for [a, b, c] in orders {
            let mut e = vec![0; nv];
            e[a] -= 1;
            e[b] -= 1;
            e[c] += 1;
            field.add_term(-(&quarter * val), e);
        }
    }
    Ok(field)
}

/// The scalar curvature functional together with the volume exponents `d_a`.
pub fn einstein_functional(spec: &SpaceSpec) -> Result<ConstrainedFunctional> {
    require_generic(spec)?;
    einstein_functional_unchecked(spec)
}

/// As [`einstein_functional`], without the genericity check. Solvers use it
/// for isotropy blocks of size one, whose summands stay pairwise non-isomorphic.
pub fn einstein_functional_unchecked(spec: &SpaceSpec) -> Result<ConstrainedFunctional> {
    let field = build_field(spec)?;
    let exps = spec
        .modules()
        .iter()
        .map(|id| spec.module_dimension(*id).map(|d| Rational::from_integer(d.into())))
        .collect::<Result<Vec<_>>>()?;
    Ok(ConstrainedFunctional::new(field, exps))
}

pub fn scalar_curvature_generic<T: Scalar>(spec: &SpaceSpec, x: &MetricParams<T>) -> Result<T> {
    check_metric(spec, x)?;
    Ok(scalar_curvature_field(spec)?.eval(x.values()))
}

fn check_metric<T: Scalar>(spec: &SpaceSpec, x: &MetricParams<T>) -> Result<()> {
    if x.modules() != spec.modules().as_slice() {
        return domain(format!("metric does not match the summands of {spec}"));
    }
    Ok(())
}

/// Closed form of the scalar curvature, evaluated term by term.
///
/// Orthogonal:
/// `S = sum_a k_a(k_a-1)(k_a-2)/(8(n-2) x_a) + 1/2 sum_(a,b) k_a k_b / x_(a,b)
///    - 1/(8(n-2)) sum_(a<=s,b) k_a k_b (k_a-1) x_a / x_(a,b)^2
///    - 1/(8(n-2)) sum_(a<b<=s) k_a k_b (k_b-1) x_b / x_(a,b)^2
///    - 1/(4(n-2)) sum_(a<b<c) k_a k_b k_c (x_ab/(x_ac x_bc) + x_ac/(x_ab x_bc) + x_bc/(x_ab x_ac))`,
/// and the symplectic form has `k+1`, `2k+1`, denominators `4(n+1)`, `n+1` and `2 k_a k_b` in place of these.
pub fn scalar_curvature_closed<T: Scalar>(spec: &SpaceSpec, x: &MetricParams<T>) -> Result<T> {
    check_metric(spec, x)?;
    let n = spec.n() as i64;
    let m = spec.blocks().len();
    let s = spec.s();
    let k = |i: usize| T::from_int(spec.block(i) as i64);
    let int = |v: i64| T::from_int(v);
    let xd = |a: usize| x.get(ModuleId::Diagonal(a)).cloned().expect("diagonal parameter");
    let xo = |a: usize, b: usize| x.get(ModuleId::OffDiagonal(a, b)).cloned().expect("off-diagonal parameter");

    // per-family ingredients
    let (sub, own, c1, c2, c3) = match spec.family() {
        GroupFamily::Orthogonal => (
            Box::new(|a: usize| k(a) - int(2)) as Box<dyn Fn(usize) -> T>,
            Box::new(|a: usize| k(a) - int(1)) as Box<dyn Fn(usize) -> T>,
            T::one() / int(8 * (n - 2)),
            T::one() / int(2),
            T::one() / int(4 * (n - 2)),
        ),
        GroupFamily::Symplectic => (
            Box::new(|a: usize| k(a) + int(1)) as Box<dyn Fn(usize) -> T>,
            Box::new(|a: usize| int(2) * k(a) + int(1)) as Box<dyn Fn(usize) -> T>,
            T::one() / int(4 * (n + 1)),
            int(2),
            T::one() / int(n + 1),
        ),
    };

    let mut total = T::zero();
    for a in 1..=s {
        total = total + c1.clone() * k(a) * own(a) * sub(a) / xd(a);
    }
    for a in 1..=m {
        for b in a + 1..=m {
            total = total + c2.clone() * k(a) * k(b) / xo(a, b);
        }
    }
    for a in 1..=s {
        for b in a + 1..=m {
            let w = xo(a, b);
            total = total - c1.clone() * k(a) * k(b) * own(a) * xd(a) / (w.clone() * w);
        }
    }
    for a in 1..=s {
        for b in a + 1..=s {
            let w = xo(a, b);
            total = total - c1.clone() * k(a) * k(b) * own(b) * xd(b) / (w.clone() * w);
        }
    }
    for a in 1..=m {
        for b in a + 1..=m {
            for c in b + 1..=m {
                let (ab, ac, bc) = (xo(a, b), xo(a, c), xo(b, c));
                let ratio = ab.clone() / (ac.clone() * bc.clone())
                    + ac.clone() / (ab.clone() * bc.clone())
                    + bc / (ab * ac);
                total = total - c3.clone() * k(a) * k(b) * k(c) * ratio;
            }
        }
    }
    Ok(total)
}

/// Lagrange certificate for `x` on the full generic functional of `spec`.
pub fn verify_einstein<T: Scalar>(
    spec: &SpaceSpec,
    x: &MetricParams<T>,
    tolerance: f64,
) -> Result<EinsteinCertificate> {
    check_metric(spec, x)?;
    Ok(einstein_functional(spec)?.certify(x.values(), tolerance))
}

/// Standard-metric value `1/2 sum d - 1/4 sum [abc]` over ordered triples of summands.
pub fn standard_metric_value(spec: &SpaceSpec) -> Result<Rational> {
    let ones = vec![Rational::one(); spec.modules().len()];
    Ok(scalar_curvature_field(spec)?.eval(&ones))
}
