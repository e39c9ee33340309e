use homog_einstein::algebra::{rat, ratio};
use homog_einstein::curvature::{
    curvature_scale, einstein_functional, full_system_residual, gradient, scalar_curvature_closed,
    scalar_curvature_field, scalar_curvature_generic, standard_metric_value, symmetric_metric, three_block_form,
    verify_einstein, ScalarField,
};
use homog_einstein::solvers::{jensen_roots, quartic_solve};
use homog_einstein::{ExactMetric, GroupFamily, ModuleId, QuadSurd, Rational, SpaceSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use GroupFamily::{Orthogonal, Symplectic};
use ModuleId::{Diagonal, OffDiagonal};

fn spec(family: GroupFamily, blocks: &[u64], s: usize) -> SpaceSpec {
    SpaceSpec::new(family, blocks.to_vec(), s).unwrap()
}

fn metric(sp: &SpaceSpec, values: &[Rational]) -> ExactMetric {
    ExactMetric::new(sp, values.to_vec()).unwrap()
}

#[test]
fn standard_metric_of_so5_split_3_2() {
    let sp = spec(Orthogonal, &[3, 2], 1);
    let ones = ExactMetric::uniform(&sp, rat(1)).unwrap();
    // d = (3, 6); [111] = 1/2, [1 (12) (12)] = 1 ordered three ways
    assert_eq!(scalar_curvature_generic(&sp, &ones).unwrap(), ratio(11, 4));
    assert_eq!(scalar_curvature_closed(&sp, &ones).unwrap(), ratio(11, 4));
    assert_eq!(standard_metric_value(&sp).unwrap(), ratio(11, 4));
}

#[test]
fn generic_sum_equals_closed_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (family, blocks, s) in [
        (Symplectic, vec![1, 1], 1),
        (Orthogonal, vec![3, 4, 2], 2),
        (Orthogonal, vec![3, 2, 2, 4], 1),
        (Symplectic, vec![2, 1, 3], 3),
        (Symplectic, vec![1, 2, 1, 1], 2),
    ] {
        let sp = SpaceSpec::new(family, blocks, s).unwrap();
        for _ in 0..5 {
            let vals: Vec<Rational> =
                sp.modules().iter().map(|_| ratio(rng.gen_range(1..40), rng.gen_range(1..40))).collect();
            let x = metric(&sp, &vals);
            assert_eq!(scalar_curvature_generic(&sp, &x).unwrap(), scalar_curvature_closed(&sp, &x).unwrap(), "{sp}");
        }
    }
    let sp = spec(Symplectic, &[1, 1], 1);
    let x = metric(&sp, &[rat(1), ratio(1, 2)]);
    assert_eq!(scalar_curvature_generic(&sp, &x).unwrap(), scalar_curvature_closed(&sp, &x).unwrap());
}

#[test]
fn three_block_substitution() {
    for (family, s, k, l) in [(Orthogonal, 2, 3, 4), (Orthogonal, 3, 4, 2), (Symplectic, 2, 1, 1), (Symplectic, 4, 2, 3)] {
        let sp = SpaceSpec::three_block(family, s, k, l).unwrap();
        let coeffs = three_block_form(family, s, k, l).unwrap();
        let scale = curvature_scale(family, s, k, l);
        let (x, y, z) = (ratio(3, 7), ratio(5, 2), ratio(11, 13));
        let m = symmetric_metric(&sp, x.clone(), y.clone(), z.clone()).unwrap();
        let full = scalar_curvature_generic(&sp, &m).unwrap();
        assert_eq!(full, scale * coeffs.field().eval(&[x, y, z]), "{sp}");
    }
}

#[test]
fn three_block_coefficient_examples() {
    let c = three_block_form(Orthogonal, 2, 3, 4).unwrap();
    let got: Vec<Rational> = vec![c.a.clone(), c.b.clone(), c.c.clone(), c.d.clone(), c.e.clone(), c.f.clone(), c.p.clone(), c.q.clone(), c.r.clone()];
    let want: Vec<Rational> = [2, 24, 128, 6, 8, 12, 6, 9, 24].iter().map(|&v| rat(v)).collect();
    assert_eq!(got, want);
    assert!(c.relations_hold());

    let c = three_block_form(Symplectic, 2, 1, 1).unwrap();
    assert_eq!((c.a.clone(), c.e.clone(), c.f.clone()), (rat(6), rat(3), rat(2)));
    assert_eq!((c.p.clone(), c.q.clone(), c.r.clone()), (rat(6), rat(4), rat(8)));
    assert!(c.relations_hold());
}

#[test]
fn exact_gradients() {
    let f = ScalarField::monomial(1, rat(5), vec![-1]);
    assert_eq!(gradient(&f, &[rat(2)]), vec![ratio(-5, 4)]);

    let c = three_block_form(Orthogonal, 2, 3, 4).unwrap();
    let g = gradient(&c.field(), &[rat(1), rat(1), rat(1)]);
    let two = rat(2);
    assert_eq!(g[0], -c.a.clone() - c.d.clone() - c.e.clone());
    assert_eq!(g[1], -c.b.clone() + &two * &c.d - c.f.clone());
    assert_eq!(g[2], -c.c.clone() + &two * &c.e + &two * &c.f);
}

#[test]
fn finite_differences_match_gradient() {
    let sp = spec(Orthogonal, &[3, 4, 3], 2);
    let field = scalar_curvature_field(&sp).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let h = 1e-6;
    for _ in 0..10 {
        let x: Vec<f64> = (0..field.nvars()).map(|_| rng.gen_range(0.5..2.0)).collect();
        let exact = gradient(&field, &x);
        let norm = exact.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        for i in 0..x.len() {
            let (mut up, mut down) = (x.clone(), x.clone());
            up[i] += h;
            down[i] -= h;
            let fd = (field.eval(&up) - field.eval(&down)) / (2.0 * h);
            assert!((fd - exact[i]).abs() / norm < 1e-6);
        }
    }
}

#[test]
fn jensen_metric_with_size_two_block_is_exactly_einstein() {
    for k2 in 2..6i64 {
        let sp = spec(Orthogonal, &[2, k2 as u64], 1);
        let x = metric(&sp, &[rat(1), ratio(k2 + 1, 2 * k2)]);
        let cert = verify_einstein(&sp, &x, 1e-10).unwrap();
        assert_eq!(cert.exact_zero, Some(true));
        assert!(cert.is_einstein());
    }
}

#[test]
fn standard_metric_is_not_einstein() {
    let sp = spec(Orthogonal, &[3, 4], 1);
    let cert = verify_einstein(&sp, &ExactMetric::uniform(&sp, rat(1)).unwrap(), 1e-8).unwrap();
    assert!(cert.residual_inf > 1e-3);
    assert!(!cert.is_einstein());
}

#[test]
fn certificate_is_scale_invariant() {
    let sp = spec(Orthogonal, &[3, 4], 1);
    let x = metric(&sp, &[rat(1), ratio(3, 5)]);
    let a = verify_einstein(&sp, &x, 1e-8).unwrap();
    let b = verify_einstein(&sp, &x.scaled(&rat(2)), 1e-8).unwrap();
    assert_eq!(a.residual_inf, b.residual_inf);
    assert_eq!(a.lambda, b.lambda);
}

#[test]
fn non_generic_space_is_refused() {
    let sp = spec(Orthogonal, &[2, 2, 5], 2);
    assert!(einstein_functional(&sp).is_err());
}

#[test]
fn five_parameter_system() {
    let (k, l) = (3u64, 4u64);
    for t in jensen_roots(Orthogonal, 2 * k, l).unwrap() {
        let one = QuadSurd::from_rational(rat(1));
        let x = [one.clone(), one.clone(), one, t.clone(), t];
        assert_eq!(full_system_residual(Orthogonal, (k, k, l), &x), QuadSurd::from_rational(rat(0)));
    }

    for sol in quartic_solve(Orthogonal, 3, 3).unwrap() {
        let v = sol.values_f64();
        let m = |id| v[sol.metric.modules().iter().position(|x| *x == id).unwrap()];
        let x = [m(Diagonal(1)), m(Diagonal(2)), m(OffDiagonal(1, 2)), m(OffDiagonal(1, 3)), m(OffDiagonal(2, 3))];
        assert!(full_system_residual(Orthogonal, (3, 3, 3), &x) < 1e-8);
    }

    let x = [0.7, 1.3, 2.1, 0.4, 1.9];
    assert!(full_system_residual(Orthogonal, (3, 4, 2), &x) > 1e-3);
}
