use crate::curvature::field::ScalarField;
use crate::scalar::Scalar;
use crate::space::GroupFamily;
use crate::Rational;

/// Polynomial in `(x1, x2, x12, x13, x23)` from integer-coefficient monomials.
fn poly(terms: &[(i64, [i32; 5])]) -> ScalarField {
    let mut f = ScalarField::zero(5);
    for (c, e) in terms {
        f.add_term(Rational::from_integer((*c).into()), e.to_vec());
    }
    f
}

fn mono(e: [i32; 5]) -> ScalarField {
    poly(&[(1, e)])
}

/// The four polynomial Einstein equations (left minus right) for blocks
/// `(k1, k2, k3)` with `s = 2`, in the variables `(x1, x2, x12, x13, x23)`.
///
/// Each equation is a monomial multiple of `r_i - r_{i+1}`, where `r` runs over the
/// normalized partials `x_a dS/dx_a / d_a` of the summands in the order above.
pub fn full_system(family: GroupFamily, ks: (u64, u64, u64)) -> [ScalarField; 4] {
    let (k1, k2, k3) = (ks.0 as i64, ks.1 as i64, ks.2 as i64);
    let kk = k1 + k2 + k3;
    // exponent vectors
    const X1: usize = 0;
    const X2: usize = 1;
    const X12: usize = 2;
    const X13: usize = 3;
    const X23: usize = 4;
    let e = |pairs: &[(usize, i32)]| {
        let mut v = [0; 5];
        for &(i, p) in pairs {
            v[i] += p;
        }
        v
    };
    let triple = e(&[(X12, 1), (X13, 1), (X23, 1)]);

    let (own1, own2, sub1, sub2, lead, scale) = match family {
        GroupFamily::Orthogonal => (k1 - 1, k2 - 1, k1 - 2, k2 - 2, 2 * (kk - 2), 1),
        GroupFamily::Symplectic => (2 * k1 + 1, 2 * k2 + 1, k1 + 1, k2 + 1, 4 * (kk + 1), 2),
    };

    let a = poly(&[
        (sub2, e(&[(X12, 2), (X23, 2)])),
        (k3, e(&[(X2, 2), (X12, 2)])),
        (k1, e(&[(X2, 2), (X23, 2)])),
    ]);
    let b = poly(&[
        (lead, triple),
        (-own1, e(&[(X1, 1), (X13, 1), (X23, 1)])),
        (-own2, e(&[(X2, 1), (X13, 1), (X23, 1)])),
        (scale * k3, e(&[(X12, 3)])),
        (-scale * k3, e(&[(X12, 1), (X13, 2)])),
        (-scale * k3, e(&[(X12, 1), (X23, 2)])),
    ]);
    let c = poly(&[
        (lead, triple),
        (-own1, e(&[(X1, 1), (X12, 1), (X23, 1)])),
        (scale * k2, e(&[(X13, 3)])),
        (-scale * k2, e(&[(X12, 2), (X13, 1)])),
        (-scale * k2, e(&[(X13, 1), (X23, 2)])),
    ]);
    let d = poly(&[
        (lead, triple),
        (-own2, e(&[(X2, 1), (X12, 1), (X13, 1)])),
        (scale * k1, e(&[(X23, 3)])),
        (-scale * k1, e(&[(X12, 2), (X23, 1)])),
        (-scale * k1, e(&[(X13, 2), (X23, 1)])),
    ]);
    let inner = poly(&[
        (sub1, e(&[(X12, 2), (X13, 2)])),
        (k2, e(&[(X1, 2), (X13, 2)])),
        (k3, e(&[(X1, 2), (X12, 2)])),
    ]);

    let eq1 = &(&mono(e(&[(X2, 1), (X23, 2)])) * &inner) - &(&mono(e(&[(X1, 1), (X13, 2)])) * &a);
    let eq2 = &(&poly(&[(scale, e(&[(X13, 1)]))]) * &a) - &(&mono(e(&[(X2, 1), (X23, 1)])) * &b);
    let eq3 = &(&mono(e(&[(X13, 1)])) * &b) - &(&mono(e(&[(X12, 1)])) * &c);
    let eq4 = &(&mono(e(&[(X23, 1)])) * &c) - &(&mono(e(&[(X13, 1)])) * &d);
    [eq1, eq2, eq3, eq4]
}

/// `max_i |eq_i(x)| / max term of eq_i at x`; zero exactly at solutions.
pub fn full_system_residual<T: Scalar>(family: GroupFamily, ks: (u64, u64, u64), x: &[T; 5]) -> T {
    full_system(family, ks).iter().fold(T::zero(), |acc, eq| {
        let scale = eq.max_term_magnitude(x);
        if scale == T::zero() {
            return acc;
        }
        acc.max_val(eq.eval(x).abs_val() / scale)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, ratio, QuadSurd};
    use crate::curvature::sum::einstein_functional;
    use crate::space::{ModuleId, SpaceSpec};

    fn surd_jensen_orthogonal(k1: i64, k2: i64) -> [QuadSurd; 2] {
        // roots of (k1-2) t^2 - 2(k1+k2-2) t + (k1+k2-1) = 0
        let m = rat(k1 + k2 - 2);
        let disc = &m * &m - rat((k1 - 2) * (k1 + k2 - 1));
        let den = rat(k1 - 2);
        [
            QuadSurd::with_sqrt_of(&m / &den, rat(1) / &den, &disc),
            QuadSurd::with_sqrt_of(&m / &den, rat(-1) / &den, &disc),
        ]
    }

    #[test]
    fn jensen_embedding_is_exact_solution() {
        // blocks (2,2,5): so(4) block with Jensen parameter towards the isotropy block
        for (k, l) in [(2i64, 5i64), (3, 3), (4, 1)] {
            for t in surd_jensen_orthogonal(2 * k, l) {
                let one = QuadSurd::from_rational(rat(1));
                let x = [one.clone(), one.clone(), one, t.clone(), t];
                let r = full_system_residual(GroupFamily::Orthogonal, (k as u64, k as u64, l as u64), &x);
                assert_eq!(r, QuadSurd::from_rational(rat(0)), "k={k} l={l}");
            }
        }
    }

    #[test]
    fn symplectic_jensen_embedding() {
        // k1 = k2 = 1 merged into sp(2), l = 1: roots of 2(K+1) t^2 - 4(K+1+1) t + ... with K=2
        // take k1=2,k2=1 Jensen formula: t = (2(k1+k2+1) +- sqrt(2E)) / (2(k1+1))
        let (k1, k2) = (2i64, 1i64);
        let e = 1 + k1 + 2 * k2 + 2 * k1 * k2 + 2 * k2 * k2;
        for sign in [1, -1] {
            let t = QuadSurd::with_sqrt_of(
                ratio(2 * (k1 + k2 + 1), 2 * (k1 + 1)),
                ratio(sign, 2 * (k1 + 1)),
                &rat(2 * e),
            );
            let one = QuadSurd::from_rational(rat(1));
            let x = [one.clone(), one.clone(), one, t.clone(), t];
            assert_eq!(
                full_system_residual(GroupFamily::Symplectic, (1, 1, 1), &x),
                QuadSurd::from_rational(rat(0))
            );
        }
    }

    #[test]
    fn random_point_is_not_a_solution() {
        let x = [0.3, 0.9, 1.0, 0.45, 1.7];
        assert!(full_system_residual(GroupFamily::Orthogonal, (3, 4, 5), &x) > 1e-3);
    }

    /// `eq_i / (r_i - r_{i+1})` as a function of the point.
    fn quotient(family: GroupFamily, i: usize, pt: &[Rational]) -> Rational {
        let spec = SpaceSpec::new(family, vec![3, 4, 2], 2).unwrap();
        let func = einstein_functional(&spec).unwrap();
        let g = func.gradient_at(pt);
        let r: Vec<Rational> = (0..5).map(|j| &pt[j] * &g[j] / &func.exponents()[j]).collect();
        full_system(family, (3, 4, 2))[i].eval(pt) / (&r[i] - &r[i + 1])
    }

    #[test]
    fn equations_are_monomial_multiples_of_ratio_differences() {
        let spec = SpaceSpec::new(GroupFamily::Orthogonal, vec![3, 4, 2], 2).unwrap();
        assert_eq!(spec.modules()[2], ModuleId::OffDiagonal(1, 2));
        let p = [ratio(2, 3), ratio(5, 7), rat(1), ratio(3, 4), ratio(6, 5)];
        let q = [ratio(7, 5), ratio(1, 3), ratio(9, 8), ratio(4, 11), ratio(2, 1)];
        for family in [GroupFamily::Orthogonal, GroupFamily::Symplectic] {
            for i in 0..4 {
                let base = quotient(family, i, &p);
                assert_ne!(base, rat(0));
                // read off the exponent of each variable by doubling it
                let exps: Vec<i32> = (0..5)
                    .map(|j| {
                        let mut pj = p.to_vec();
                        pj[j] = &pj[j] * rat(2);
                        let mut f = quotient(family, i, &pj) / &base;
                        let mut e = 0;
                        while f > rat(1) {
                            f = f / rat(2);
                            e += 1;
                        }
                        while f < rat(1) {
                            f = f * rat(2);
                            e -= 1;
                        }
                        assert_eq!(f, rat(1), "non-monomial factor");
                        e
                    })
                    .collect();
                let predicted = (0..5).fold(base.clone(), |acc, j| {
                    acc * Scalar::powi(&(&q[j] / &p[j]), exps[j])
                });
                assert_eq!(quotient(family, i, &q), predicted, "{family} eq {}", i + 1);
            }
        }
    }
}
