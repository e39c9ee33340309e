//! `homog-einstein`: solve, tabulate, verify and cross-check invariant
//! Einstein metrics on `SO(n)/SO(l)` and `Sp(n)/Sp(l)`.

mod report;

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use homog_einstein::algebra::parse_rational;
use homog_einstein::curvature::einstein_functional_unchecked;
use homog_einstein::oracle::compare_with_closed_forms;
use homog_einstein::solvers::{
    expected_table, general_solve_with, jensen_solve_with, plan_many_metrics_with, quartic_solve_with, table_sweep,
    EinsteinSolution, SolveOptions,
};
use homog_einstein::{ExactMetric, GroupFamily, ModuleId, Rational, SpaceSpec, DEFAULT_TOLERANCE};

use report::{
    MetricFile, PlanMetricJson, PlanReport, PlanRunJson, SolutionJson, SolveReport, SpecJson, VerifyJson,
};

const TOL_ENV: &str = "EINSTEIN_HOMOG_TOL";

const EXIT_INPUT: u8 = 1;
const EXIT_FLAGGED: u8 = 2;
const EXIT_TABLE_MISMATCH: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "homog-einstein", version, about = "Invariant Einstein metrics on SO(n)/SO(l) and Sp(n)/Sp(l)")]
struct Cli {
    /// Residual tolerance; overrides EINSTEIN_HOMOG_TOL.
    #[arg(long, global = true)]
    tolerance: Option<f64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute and certify Einstein metrics.
    Solve(SolveArgs),
    /// Positive-root counts of the quartic over a (k, l) grid.
    Tables(TablesArgs),
    /// Check a metric file against the Einstein equations.
    Verify(VerifyArgs),
    /// Compare closed-form structure data with the brute-force matrix oracle.
    Oracle(OracleArgs),
    /// Build a space carrying at least 2p distinct non-Jensen Einstein metrics.
    Plan(PlanArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Family {
    So,
    Sp,
}

impl From<Family> for GroupFamily {
    fn from(f: Family) -> Self {
        match f {
            Family::So => GroupFamily::Orthogonal,
            Family::Sp => GroupFamily::Symplectic,
        }
    }
}

#[derive(Args, Debug)]
#[command(group(clap::ArgGroup::new("mode").required(true).args(["jensen", "quartic", "general"])))]
struct SolveArgs {
    #[arg(long, value_enum)]
    family: Family,
    /// Two blocks k1, k2 with s = 1.
    #[arg(long)]
    jensen: bool,
    /// Blocks (k, k, l) with the symmetric ansatz.
    #[arg(long)]
    quartic: bool,
    /// Blocks (k, ..., k, l) with s copies of k.
    #[arg(long)]
    general: bool,
    #[arg(long)]
    k1: Option<u64>,
    #[arg(long)]
    k2: Option<u64>,
    #[arg(long)]
    k: Option<u64>,
    #[arg(long)]
    l: Option<u64>,
    #[arg(long)]
    s: Option<usize>,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum GridFormat {
    Csv,
    Text,
}

#[derive(Args, Debug)]
struct TablesArgs {
    #[arg(long, value_enum)]
    family: Family,
    /// Range of k, as `a..b` (inclusive) or a single value.
    #[arg(long, value_parser = parse_range)]
    k: Option<RangeInclusive<u64>>,
    /// Range of l, as `a..b` (inclusive) or a single value.
    #[arg(long, value_parser = parse_range)]
    l: Option<RangeInclusive<u64>>,
    #[arg(long, value_enum, default_value = "csv")]
    format: GridFormat,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// JSON (solve output or `{spec, params}`) or `key = value` lines.
    file: PathBuf,
}

#[derive(Args, Debug)]
struct OracleArgs {
    #[arg(long, value_enum)]
    family: Family,
    /// Block sizes, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    blocks: Vec<u64>,
    /// Number of blocks carrying the extra symmetry.
    #[arg(long, default_value_t = 1)]
    s: usize,
}

#[derive(Args, Debug)]
struct PlanArgs {
    #[arg(long, value_enum)]
    family: Family,
    #[arg(long)]
    p: usize,
    #[arg(long)]
    output: Option<PathBuf>,
}

/// A failure that maps to exit code 1.
#[derive(Debug)]
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

type CmdResult = Result<u8, InputError>;

fn parse_range(text: &str) -> Result<RangeInclusive<u64>, String> {
    let num = |s: &str| s.trim().parse::<u64>().map_err(|_| format!("bad range bound {s:?}"));
    let (a, b) = match text.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?),
        None => {
            let v = num(text)?;
            (v, v)
        }
    };
    if a > b {
        return Err(format!("empty range {text:?}"));
    }
    Ok(a..=b)
}

fn tolerance(flag: Option<f64>) -> Result<f64, InputError> {
    let tol = match flag {
        Some(t) => t,
        None => match std::env::var(TOL_ENV) {
            Ok(v) => v.trim().parse().map_err(|_| InputError(format!("{TOL_ENV}={v:?} is not a number")))?,
            Err(_) => DEFAULT_TOLERANCE,
        },
    };
    if !(tol.is_finite() && tol > 0.0) {
        return Err(InputError(format!("tolerance must be positive, got {tol}")));
    }
    Ok(tol)
}

fn emit(text: &str, output: Option<&Path>) -> Result<(), InputError> {
    match output {
        Some(path) => std::fs::write(path, text).map_err(|e| InputError(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

fn require<T: Copy>(v: Option<T>, name: &str, mode: &str) -> Result<T, InputError> {
    v.ok_or_else(|| InputError(format!("--{mode} needs --{name}")))
}

fn cmd_solve(args: &SolveArgs, tol: f64) -> CmdResult {
    let family = GroupFamily::from(args.family);
    let opts = SolveOptions { tolerance: tol, ..SolveOptions::default() };
    let mut notes = Vec::new();
    let (spec, sols): (SpaceSpec, Vec<EinsteinSolution>) = if args.jensen {
        let k1 = require(args.k1, "k1", "jensen")?;
        let k2 = require(args.k2, "k2", "jensen")?;
        (SpaceSpec::new(family, vec![k1, k2], 1)?, jensen_solve_with(family, k1, k2, &opts)?)
    } else if args.quartic {
        let k = require(args.k, "k", "quartic")?;
        let l = require(args.l, "l", "quartic")?;
        notes.push(format!("{}(2k+l) also carries 2 Jensen metrics from the splitting (2k, l)", family.group_name()));
        (SpaceSpec::three_block(family, 2, k, l)?, quartic_solve_with(family, k, l, &opts)?)
    } else {
        let s = require(args.s, "s", "general")?;
        let k = require(args.k, "k", "general")?;
        let l = require(args.l, "l", "general")?;
        (SpaceSpec::three_block(family, s, k, l)?, general_solve_with(family, s, k, l, &opts)?)
    };
    let flagged = sols.iter().any(|s| !s.certified());
    let report = SolveReport {
        spec: SpecJson::from(&spec),
        solutions: sols.iter().map(SolutionJson::from).collect(),
        notes,
    };
    emit(&to_json(&report), args.output.as_deref())?;
    Ok(if flagged { EXIT_FLAGGED } else { 0 })
}

fn cmd_tables(args: &TablesArgs) -> CmdResult {
    let family = GroupFamily::from(args.family);
    let expected = expected_table(family);
    let ks = args.k.clone().unwrap_or(expected.ks[0]..=*expected.ks.last().unwrap());
    let ls = args.l.clone().unwrap_or(expected.ls[0]..=*expected.ls.last().unwrap());
    let grid = table_sweep(family, ks, ls)?;
    let text = match args.format {
        GridFormat::Csv => grid.to_csv(),
        GridFormat::Text => grid.to_text(),
    };
    emit(&text, args.output.as_deref())?;
    // Cells outside the reference range are reported but not compared.
    let mut mismatches = 0;
    let mut outside = 0;
    for (k, l, want, got) in grid.mismatches(&expected) {
        match want {
            Some(w) => {
                mismatches += 1;
                eprintln!("mismatch at k={k}, l={l}: reference {w}, computed {got}");
            }
            None => outside += 1,
        }
    }
    let compared = grid.cells() - outside;
    eprintln!("{compared} of {} cells compared with the reference table, {mismatches} mismatches", grid.cells());
    Ok(if mismatches > 0 { EXIT_TABLE_MISMATCH } else { 0 })
}

/// Whether the diagonal functional captures the Einstein equations. Beyond
/// generic specs this admits a single orthogonal isotropy block of size 1, whose
/// summands are pairwise non-isomorphic although `check_generic` rejects them.
fn diagonal_ok(spec: &SpaceSpec) -> Result<(), InputError> {
    let check = spec.check_generic();
    if check.generic {
        return Ok(());
    }
    let blocks = spec.blocks();
    let ones: Vec<usize> = (0..blocks.len()).filter(|&i| blocks[i] == 1).collect();
    if spec.family() == GroupFamily::Orthogonal && ones.len() == 1 && ones[0] >= spec.s() {
        let mut rest = blocks.to_vec();
        rest.remove(ones[0]);
        if rest.iter().sum::<u64>() >= 2 {
            if let Ok(reduced) = SpaceSpec::new(spec.family(), rest, spec.s()) {
                if reduced.check_generic().generic {
                    return Ok(());
                }
            }
        }
    }
    Err(InputError(format!("{spec}: {}", check.reason.unwrap_or_default())))
}

fn spec_from_json(spec: &SpecJson) -> Result<SpaceSpec, InputError> {
    let family: GroupFamily = spec.family.parse()?;
    let built = SpaceSpec::new(family, spec.blocks.clone(), spec.s)?;
    if let Some(t) = spec.t {
        if t != built.t() {
            return Err(InputError(format!("t = {t} inconsistent with {} blocks and s = {}", spec.blocks.len(), spec.s)));
        }
    }
    Ok(built)
}

fn metric_from_params(spec: &SpaceSpec, params: &BTreeMap<String, String>) -> Result<ExactMetric, InputError> {
    let mut map = BTreeMap::new();
    for (key, value) in params {
        let id: ModuleId = key.parse()?;
        let v: Rational = parse_rational(value)?;
        if map.insert(id, v).is_some() {
            return Err(InputError(format!("duplicate parameter {id}")));
        }
    }
    Ok(ExactMetric::from_map(spec, &map)?)
}

/// `key = value` lines: `family`, `blocks`, `s`, then one line per module.
fn parse_plain(text: &str) -> Result<MetricFile, InputError> {
    let mut family = None;
    let mut blocks = None;
    let mut s = None;
    let mut params = BTreeMap::new();
    for (no, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .or_else(|| line.split_once(':'))
            .ok_or_else(|| InputError(format!("line {}: expected key = value", no + 1)))?;
        let (key, value) = (key.trim(), value.trim());
        match key {
            "family" => family = Some(value.to_string()),
            "blocks" => {
                let parsed = value
                    .split(',')
                    .map(|b| b.trim().parse::<u64>())
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|_| InputError(format!("line {}: bad block list", no + 1)))?;
                blocks = Some(parsed);
            }
            "s" => s = Some(value.parse().map_err(|_| InputError(format!("line {}: bad s", no + 1)))?),
            _ => {
                params.insert(key.to_string(), value.to_string());
            }
        }
    }
    let missing = |what: &str| InputError(format!("metric file lacks `{what}`"));
    Ok(MetricFile {
        spec: SpecJson { family: family.ok_or_else(|| missing("family"))?, blocks: blocks.ok_or_else(|| missing("blocks"))?, s: s.ok_or_else(|| missing("s"))?, t: None },
        params,
    })
}

fn read_metrics(text: &str) -> Result<Vec<MetricFile>, InputError> {
    if !text.trim_start().starts_with('{') {
        return Ok(vec![parse_plain(text)?]);
    }
    let value: serde_json::Value = serde_json::from_str(text)?;
    if value.get("solutions").is_some() {
        let report: SolveReport = serde_json::from_value(value)?;
        if report.solutions.is_empty() {
            return Err(InputError("file contains no solutions".into()));
        }
        Ok(report.solutions.into_iter().map(|s| MetricFile { spec: report.spec.clone(), params: s.params }).collect())
    } else {
        Ok(vec![serde_json::from_value(value)?])
    }
}

fn cmd_verify(args: &VerifyArgs, tol: f64) -> CmdResult {
    let text = std::fs::read_to_string(&args.file).map_err(|e| InputError(format!("{}: {e}", args.file.display())))?;
    let mut results = Vec::new();
    for file in read_metrics(&text)? {
        let spec = spec_from_json(&file.spec)?;
        diagonal_ok(&spec)?;
        let metric = metric_from_params(&spec, &file.params)?;
        let cert = einstein_functional_unchecked(&spec)?.certify(metric.values(), tol);
        results.push(VerifyJson {
            spec: SpecJson::from(&spec),
            lambda: cert.lambda,
            einstein_constant: cert.einstein_constant,
            residual: cert.residual_inf,
            scalar_curvature: cert.scalar_curvature,
            volume: cert.volume,
            tolerance: cert.tolerance,
            exact_zero: cert.exact_zero,
            einstein: cert.is_einstein(),
        });
    }
    let all = results.iter().all(|r| r.einstein);
    print!("{}", to_json(&serde_json::json!({ "einstein": all, "results": results })));
    Ok(if all { 0 } else { EXIT_FLAGGED })
}

fn cmd_oracle(args: &OracleArgs) -> CmdResult {
    const ORACLE_TOL: f64 = 1e-9;
    let spec = SpaceSpec::new(args.family.into(), args.blocks.clone(), args.s)?;
    let report = compare_with_closed_forms(&spec)?;
    let mut out = String::new();
    writeln!(out, "{spec}").unwrap();
    writeln!(out, "{:<24} {:>16} {:>20} {:>10}", "triple", "closed form", "brute force", "deviation").unwrap();
    for row in &report.triples {
        let ids = format!("[{} {} {}]", row.ids[0], row.ids[1], row.ids[2]);
        writeln!(out, "{ids:<24} {:>16} {:>20.12} {:>10.2e}", row.closed.to_string(), row.brute, row.deviation).unwrap();
    }
    writeln!(out, "{:<24} {:>16} {:>20} {:>10}", "killing ratio", "closed form", "brute force", "deviation").unwrap();
    for row in &report.ratios {
        let blocks: Vec<String> = row.blocks.iter().map(usize::to_string).collect();
        let label = format!("blocks {} (k={})", blocks.join("+"), row.k);
        writeln!(out, "{label:<24} {:>16} {:>20.12} {:>10.2e}", row.closed.to_string(), row.measured, row.deviation).unwrap();
    }
    let pass = report.passes(ORACLE_TOL);
    writeln!(out, "max triple deviation   {:.3e}", report.max_triple_deviation()).unwrap();
    writeln!(out, "max ratio deviation    {:.3e}", report.max_ratio_deviation()).unwrap();
    writeln!(out, "ad-invariance defect   {:.3e}", report.ad_invariance).unwrap();
    writeln!(out, "bracket consistency    {:.3e}", report.bracket_consistency).unwrap();
    writeln!(out, "closure residual       {:.3e}", report.closure_residual).unwrap();
    writeln!(out, "{}", if pass { "match" } else { "MISMATCH" }).unwrap();
    print!("{out}");
    Ok(if pass { 0 } else { EXIT_FLAGGED })
}

fn cmd_plan(args: &PlanArgs, tol: f64) -> CmdResult {
    let family = GroupFamily::from(args.family);
    let opts = SolveOptions { tolerance: tol, ..SolveOptions::default() };
    let plan = plan_many_metrics_with(family, args.p, &opts)?;
    let report = PlanReport {
        family: family.tag().to_string(),
        p: plan.p,
        n: plan.n,
        l: plan.l,
        factors: plan.factors.clone(),
        runs: plan.runs.iter().map(|r| PlanRunJson { k: r.k, s: r.s, solutions: r.solutions.len() }).collect(),
        metrics: plan
            .metrics
            .iter()
            .map(|m| PlanMetricJson { spec: SpecJson::from(&m.spec), solution: SolutionJson::from(m) })
            .collect(),
        min_separation: plan.min_separation,
        ok: plan.ok(),
    };
    emit(&to_json(&report), args.output.as_deref())?;
    Ok(if plan.ok() { 0 } else { EXIT_FLAGGED })
}

fn run(cli: &Cli) -> CmdResult {
    match &cli.command {
        Command::Solve(a) => cmd_solve(a, tolerance(cli.tolerance)?),
        Command::Tables(a) => cmd_tables(a),
        Command::Verify(a) => cmd_verify(a, tolerance(cli.tolerance)?),
        Command::Oracle(a) => cmd_oracle(a),
        Command::Plan(a) => cmd_plan(a, tolerance(cli.tolerance)?),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}
