//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any failure.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use homog_einstein::algebra::ratio;
use homog_einstein::curvature::{
    curvature_scale, einstein_functional_unchecked, gradient, projective_distance, scalar_curvature_closed,
    symmetric_metric, three_block_coefficients, three_block_form, MetricParams,
};
use homog_einstein::oracle::compare_with_closed_forms;
use homog_einstein::solvers::{
    expected_table, general_solve, jensen_solve, plan_many_metrics, quartic_solve, table_sweep, theorem_sign_checks,
    EinsteinSolution, SolutionFamily,
};
use homog_einstein::{GroupFamily, Rational, SpaceSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SO: GroupFamily = GroupFamily::Orthogonal;
const SP: GroupFamily = GroupFamily::Symplectic;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn timed(limit: Option<Duration>, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let mut out = f();
    let took = start.elapsed();
    if let Some(limit) = limit {
        if took > limit {
            out.pass = false;
            out.detail.push_str(&format!("; exceeded {:.0?}", limit));
        }
    }
    out.detail.push_str(&format!("; {:.2?}", took));
    out
}

fn table(family: GroupFamily) -> Outcome {
    let grid = match table_sweep(family, 3..=20, 1..=20) {
        Ok(g) => g,
        Err(e) => return outcome(false, e.to_string()),
    };
    let bad = grid.mismatches(&expected_table(family));
    outcome(
        bad.is_empty() && grid.cells() == 360,
        format!("{} cells, {} mismatches", grid.cells(), bad.len()),
    )
}

/// Ordered compositions of `n` into at most `parts` positive blocks.
fn compositions(n: u64, parts: usize) -> Vec<Vec<u64>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    if parts == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for first in 1..=n {
        for mut rest in compositions(n - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn oracle_sweep() -> Outcome {
    let mut specs = Vec::new();
    for n in 3..=8 {
        specs.extend(compositions(n, 3).into_iter().map(|b| (SO, b)));
    }
    for n in 2..=4 {
        specs.extend(compositions(n, 4).into_iter().map(|b| (SP, b)));
    }
    let mut worst_triple: f64 = 0.0;
    let mut worst_ratio: f64 = 0.0;
    let mut ratios = 0;
    let mut failures = Vec::new();
    for (family, blocks) in &specs {
        let spec = SpaceSpec::new(*family, blocks.clone(), 1).expect("valid pattern");
        match compare_with_closed_forms(&spec) {
            Ok(r) => {
                worst_triple = worst_triple.max(r.max_triple_deviation());
                worst_ratio = worst_ratio.max(r.max_ratio_deviation());
                ratios += r.ratios.len();
                if !r.passes(1e-9) {
                    failures.push(spec.to_string());
                }
            }
            Err(e) => failures.push(format!("{spec}: {e}")),
        }
    }
    outcome(
        failures.is_empty(),
        format!(
            "{} patterns, {ratios} Killing-ratio checks, max triple dev {worst_triple:.1e}, max ratio dev {worst_ratio:.1e}{}",
            specs.len(),
            if failures.is_empty() { String::new() } else { format!(", failing: {failures:?}") }
        ),
    )
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    ratio(rng.gen_range(1..60), rng.gen_range(1..25))
}

fn formula_identities() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut points = 0;
    let mut failures = Vec::new();
    for family in [SO, SP] {
        let min_k = if family == SO { 3 } else { 1 };
        for s in 2..=4 {
            for k in min_k..=5 {
                for l in 1..=6 {
                    let spec = SpaceSpec::three_block(family, s, k, l).expect("valid three-block spec");
                    let field = einstein_functional_unchecked(&spec).expect("functional").field().clone();
                    let coeffs = three_block_form(family, s, k, l).expect("coefficients");
                    let scale = curvature_scale(family, s, k, l);
                    for _ in 0..20 {
                        let vals: Vec<Rational> = (0..spec.modules().len()).map(|_| random_rational(&mut rng)).collect();
                        let m = MetricParams::new(&spec, vals.clone()).expect("positive");
                        let closed = scalar_curvature_closed(&spec, &m).expect("closed form");
                        if field.eval(&vals) != closed {
                            failures.push(format!("generic vs closed at {spec}"));
                        }
                        let xyz = [random_rational(&mut rng), random_rational(&mut rng), random_rational(&mut rng)];
                        let sym = symmetric_metric(&spec, xyz[0].clone(), xyz[1].clone(), xyz[2].clone()).expect("positive");
                        let closed = scalar_curvature_closed(&spec, &sym).expect("closed form");
                        let reduced = &scale * coeffs.field().eval(&xyz);
                        if closed != reduced || field.eval(sym.values()) != reduced {
                            failures.push(format!("three-block form at {spec}"));
                        }
                        points += 2;
                    }
                }
            }
        }
    }
    let mut relations = 0;
    for family in [SO, SP] {
        for s in 2..=6 {
            for k in 1..=8 {
                for l in 1..=12 {
                    relations += 1;
                    if !three_block_coefficients(family, s, k, l).relations_hold() {
                        failures.push(format!("coefficient relations at {family} s={s} k={k} l={l}"));
                    }
                }
            }
        }
    }
    outcome(
        failures.is_empty(),
        format!("{points} exact point evaluations, {relations} coefficient-relation cells, {} failures {:?}", failures.len(), failures.iter().take(3).collect::<Vec<_>>()),
    )
}

fn check_all(sols: &[EinsteinSolution], worst: &mut f64, worst_system: &mut f64, bad: &mut Vec<String>) {
    for s in sols {
        *worst = worst.max(s.certificate.residual_inf);
        if let Some(r) = s.system_residual {
            *worst_system = worst_system.max(r);
        }
        let system_ok = s.system_residual.is_none_or(|r| r < 1e-8);
        if !(s.certified() && s.certificate.residual_inf < 1e-8 && system_ok) {
            bad.push(format!("{} {}: {:?}", s.spec, s.family, s.flags));
        }
    }
}

fn certification() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut worst_system: f64 = 0.0;
    let mut bad = Vec::new();
    let mut count = 0;
    let mut exact_k1_two = true;
    for (family, k1s) in [(SO, 2..=9u64), (SP, 1..=8u64)] {
        for k1 in k1s {
            for k2 in 1..=8 {
                let sols = jensen_solve(family, k1, k2).expect("jensen");
                if family == SO && k1 == 2 {
                    exact_k1_two &= sols.len() == 1
                        && sols[0].certificate.exact_zero == Some(true)
                        && sols[0].certificate.residual_inf == 0.0;
                }
                count += sols.len();
                check_all(&sols, &mut worst, &mut worst_system, &mut bad);
            }
        }
    }
    for family in [SO, SP] {
        for k in 3..=20 {
            for l in 1..=20 {
                let sols = quartic_solve(family, k, l).expect("quartic");
                count += sols.len();
                check_all(&sols, &mut worst, &mut worst_system, &mut bad);
            }
        }
    }
    for family in [SO, SP] {
        let min_k = if family == SO { 3 } else { 1 };
        for s in 2..=4 {
            for k in min_k..=min_k + 3 {
                for l in 1..=8 {
                    let sols = general_solve(family, s, k, l).expect("general");
                    count += sols.len();
                    check_all(&sols, &mut worst, &mut worst_system, &mut bad);
                }
            }
        }
    }
    outcome(
        bad.is_empty() && exact_k1_two,
        format!(
            "{count} solutions, max Lagrange residual {worst:.1e}, max system residual {worst_system:.1e}, Jensen k1=2 exact: {exact_k1_two}, {} uncertified",
            bad.len()
        ),
    )
}

fn sign_checks() -> Outcome {
    let so = theorem_sign_checks(SO, 2..=6, 3..=40, 1..=40).expect("sign checks");
    let sp = theorem_sign_checks(SP, 2..=6, 1..=40, 1..=40).expect("sign checks");
    outcome(
        so.ok() && sp.ok() && so.in_hypothesis > 0 && sp.in_hypothesis > 0,
        format!(
            "so: {} in hypothesis, {} violations, {} mismatches; sp: {} in hypothesis, {} violations, {} mismatches",
            so.in_hypothesis,
            so.violations.len(),
            so.mismatches.len(),
            sp.in_hypothesis,
            sp.violations.len(),
            sp.mismatches.len()
        ),
    )
}

fn cross_branch() -> Outcome {
    let cases = [(SO, 3, 4), (SO, 3, 5), (SO, 4, 5), (SO, 5, 6), (SP, 1, 1), (SP, 1, 2), (SP, 2, 3)];
    let mut worst: f64 = 0.0;
    let mut bad = Vec::new();
    for (family, k, l) in cases {
        let general = general_solve(family, 2, k, l).expect("general");
        let quartic = quartic_solve(family, k, l).expect("quartic");
        let branch2: Vec<&EinsteinSolution> = general.iter().filter(|s| s.family == SolutionFamily::GeneralXneY).collect();
        if branch2.len() != quartic.len() || quartic.is_empty() {
            bad.push(format!("{family} k={k} l={l}: {} vs {} roots", branch2.len(), quartic.len()));
        }
        for q in &quartic {
            let d = branch2.iter().map(|g| g.distance(q)).fold(f64::INFINITY, f64::min);
            worst = worst.max(d);
            if d >= 1e-9 {
                bad.push(format!("{family} k={k} l={l}: quartic root unmatched ({d:.1e})"));
            }
        }
        let jensen = jensen_solve(family, 2 * k, l).expect("jensen");
        let branch1: Vec<&EinsteinSolution> = general.iter().filter(|s| s.family == SolutionFamily::GeneralXeqY).collect();
        if branch1.len() != jensen.len() {
            bad.push(format!("{family} k={k} l={l}: {} vs {} Jensen metrics", branch1.len(), jensen.len()));
        }
        for j in &jensen {
            let d = branch1
                .iter()
                .map(|g| {
                    let v = g.values_f64();
                    // x on the diagonal, z towards the isotropy block
                    projective_distance(&[v[0], v[4]], &j.values_f64())
                })
                .fold(f64::INFINITY, f64::min);
            worst = worst.max(d);
            if d >= 1e-9 {
                bad.push(format!("{family} k={k} l={l}: Jensen metric unmatched ({d:.1e})"));
            }
        }
    }
    outcome(bad.is_empty(), format!("{} cases, max projective distance {worst:.1e} {bad:?}", cases.len()))
}

fn gradient_check() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut worst: f64 = 0.0;
    let mut specs = Vec::new();
    while specs.len() < 10 {
        let family = if rng.gen_bool(0.5) { SO } else { SP };
        let m = rng.gen_range(1..=4);
        let lo = if family == SO { 2 } else { 1 };
        let blocks: Vec<u64> = (0..m).map(|_| rng.gen_range(lo..=5)).collect();
        let s = rng.gen_range(1..=m);
        let Ok(spec) = SpaceSpec::new(family, blocks, s) else { continue };
        if spec.check_generic().generic {
            specs.push(spec);
        }
    }
    for spec in &specs {
        let func = einstein_functional_unchecked(spec).expect("functional");
        let field = func.field();
        let nv = func.nvars();
        for _ in 0..100 {
            let x: Vec<f64> = (0..nv).map(|_| rng.gen_range(0.5..2.0)).collect();
            let exact = gradient(field, &x);
            let norm = exact.iter().fold(0.0f64, |a, g| a.max(g.abs()));
            let h = 1e-6;
            for i in 0..nv {
                let mut up = x.clone();
                let mut down = x.clone();
                up[i] += h;
                down[i] -= h;
                let fd = (field.eval(&up) - field.eval(&down)) / (2.0 * h);
                worst = worst.max((fd - exact[i]).abs() / norm.max(f64::MIN_POSITIVE));
            }
        }
    }
    outcome(worst < 1e-6, format!("{} specs x 100 points, max relative error {worst:.1e}", specs.len()))
}

fn many_metrics() -> Outcome {
    let mut parts = Vec::new();
    let mut pass = true;
    for family in [SO, SP] {
        match plan_many_metrics(family, 2) {
            Ok(plan) => {
                let certified = plan.metrics.iter().all(EinsteinSolution::certified);
                pass &= plan.ok() && certified;
                parts.push(format!(
                    "{}({})/{}({}): {} metrics, separation {:.2e}",
                    family.group_name(),
                    plan.n,
                    family.group_name(),
                    plan.l,
                    plan.metrics.len(),
                    plan.min_separation
                ));
            }
            Err(e) => {
                pass = false;
                parts.push(e.to_string());
            }
        }
    }
    outcome(pass, parts.join("; "))
}

fn main() -> ExitCode {
    let criteria: Vec<(&str, Option<Duration>, fn() -> Outcome)> = vec![
        ("1 orthogonal quartic root-count table", Some(Duration::from_secs(10)), || table(SO)),
        ("2 symplectic quartic root-count table", Some(Duration::from_secs(10)), || table(SP)),
        ("3 brute-force oracle vs closed-form symbols and Killing ratios", Some(Duration::from_secs(60)), oracle_sweep),
        ("4 exact formula identities and coefficient relations", None, formula_identities),
        ("5 certification of every emitted solution", None, certification),
        ("6 sign conditions at z = 1 and u = 1", None, sign_checks),
        ("7 cross-branch consistency", None, cross_branch),
        ("8 exact gradient vs central differences", None, gradient_check),
        ("9 many distinct metrics for p = 2", Some(Duration::from_secs(5)), many_metrics),
    ];
    let mut failed = 0;
    for (name, limit, run) in criteria {
        let out = timed(limit, run);
        if !out.pass {
            failed += 1;
        }
        println!("{} criterion {name}: {}", if out.pass { "PASS" } else { "FAIL" }, out.detail);
    }
    if failed == 0 {
        println!("acceptance: all criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} criteria failing");
        ExitCode::FAILURE
    }
}
