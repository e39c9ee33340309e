use crate::curvature::field::ScalarField;
use crate::curvature::functional::ConstrainedFunctional;
use crate::curvature::metric::MetricParams;
use crate::error::{domain, Result};
use crate::scalar::Scalar;
use crate::space::{GroupFamily, ModuleId, SpaceSpec};
use crate::Rational;

/// Coefficients of `F = a/x + b/y + c/z - d x/y^2 - e x/z^2 - f y/z^2`
/// and of the volume `G = x^p y^q z^r` for `s` equal blocks of size `k`
/// plus an isotropy block of size `l`, where the metric takes the value `x`
/// on the diagonal summands, `y` between equal blocks and `z` towards the isotropy block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralFamilyCoeffs {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    pub d: Rational,
    pub e: Rational,
    pub f: Rational,
    pub p: Rational,
    pub q: Rational,
    pub r: Rational,
}

pub fn three_block_form(family: GroupFamily, s: usize, k: u64, l: u64) -> Result<GeneralFamilyCoeffs> {
    let min_k = match family {
        GroupFamily::Orthogonal => 3,
        GroupFamily::Symplectic => 1,
    };
    if s < 2 || k < min_k || l < 1 {
        return domain(format!(
            "three-block form needs s >= 2, k >= {min_k}, l >= 1 (got s={s}, k={k}, l={l})"
        ));
    }
    Ok(three_block_coefficients(family, s, k, l))
}

/// The coefficient formulas without range checks; some entries vanish for small `k`.
pub fn three_block_coefficients(family: GroupFamily, s: usize, k: u64, l: u64) -> GeneralFamilyCoeffs {
    let (s, k, l) = (s as i64, k as i64, l as i64);
    let v = |x: i64| Rational::from_integer(x.into());
    match family {
        GroupFamily::Orthogonal => GeneralFamilyCoeffs {
            a: v((k - 1) * (k - 2)),
            b: v((s - 1) * k * ((s + 2) * k - 4)),
            c: v(4 * (k * s + l - 2) * l),
            d: v((s - 1) * k * (k - 1)),
            e: v((k - 1) * l),
            f: v((s - 1) * k * l),
            p: v(s * k * (k - 1) / 2),
            q: v(s * (s - 1) * k * k / 2),
            r: v(s * k * l),
        },
        GroupFamily::Symplectic => GeneralFamilyCoeffs {
            a: v((k + 1) * (2 * k + 1)),
            b: v(2 * (s - 1) * k * ((s + 2) * k + 2)),
            c: v(8 * (k * s + l + 1) * l),
            d: v((s - 1) * k * (2 * k + 1)),
            e: v((2 * k + 1) * l),
            f: v(2 * (s - 1) * k * l),
            p: v(s * (2 * k + 1) * k),
            q: v(2 * s * (s - 1) * k * k),
            r: v(4 * s * k * l),
        },
    }
}

/// Factor with `S = scale * F` under the symmetric substitution.
pub fn curvature_scale(family: GroupFamily, s: usize, k: u64, l: u64) -> Rational {
    let n = s as i64 * k as i64 + l as i64;
    let sk = s as i64 * k as i64;
    match family {
        GroupFamily::Orthogonal => Rational::new(sk.into(), (8 * (n - 2)).into()),
        GroupFamily::Symplectic => Rational::new(sk.into(), (4 * (n + 1)).into()),
    }
}

impl GeneralFamilyCoeffs {
    /// `d (q + 2p) = p b - q a` and `f p = q e`.
    pub fn relations_hold(&self) -> bool {
        let lhs_d = &self.d * (&self.q + &self.p * Rational::from_integer(2.into()));
        lhs_d == &self.p * &self.b - &self.q * &self.a && &self.f * &self.p == &self.q * &self.e
    }

    pub fn check_relations(&self) -> Result<()> {
        if self.relations_hold() {
            Ok(())
        } else {
            Err(crate::Error::Inconsistent(format!(
                "coefficient relations fail for {self:?}"
            )))
        }
    }

    pub fn all_positive(&self) -> bool {
        self.as_array().iter().all(|c| *c > Rational::from_integer(0.into()))
    }

    pub fn as_array(&self) -> [Rational; 9] {
        [
            self.a.clone(),
            self.b.clone(),
            self.c.clone(),
            self.d.clone(),
            self.e.clone(),
            self.f.clone(),
            self.p.clone(),
            self.q.clone(),
            self.r.clone(),
        ]
    }

    /// `F(x, y, z)` in the variables `(x, y, z)`.
    pub fn field(&self) -> ScalarField {
        let mut f = ScalarField::zero(3);
        f.add_term(self.a.clone(), vec![-1, 0, 0]);
        f.add_term(self.b.clone(), vec![0, -1, 0]);
        f.add_term(self.c.clone(), vec![0, 0, -1]);
        f.add_term(-self.d.clone(), vec![1, -2, 0]);
        f.add_term(-self.e.clone(), vec![1, 0, -2]);
        f.add_term(-self.f.clone(), vec![0, 1, -2]);
        f
    }

    pub fn functional(&self) -> ConstrainedFunctional {
        ConstrainedFunctional::new(self.field(), vec![self.p.clone(), self.q.clone(), self.r.clone()])
    }
}

/// Embeds `(x, y, z)` into the full parameter space of `s` blocks of `k` and one block of `l`.
pub fn symmetric_metric<T: Scalar>(spec: &SpaceSpec, x: T, y: T, z: T) -> Result<MetricParams<T>> {
    if spec.t() != 1 {
        return domain(format!("{spec} is not a three-block space"));
    }
    let last = spec.blocks().len();
    let values = spec
        .modules()
        .into_iter()
        .map(|id| match id {
            ModuleId::Diagonal(_) => x.clone(),
            ModuleId::OffDiagonal(_, j) if j == last => z.clone(),
            ModuleId::OffDiagonal(..) => y.clone(),
        })
        .collect();
    MetricParams::new(spec, values)
}
