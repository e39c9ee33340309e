use std::ops::RangeInclusive;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::algebra::{isolate_positive_roots, rat, refine_root, sturm_count_positive};
use crate::curvature::{einstein_functional_unchecked, three_block_form};
use crate::error::{domain, Result};
use crate::solvers::solution::{finalize, root_candidate_solution, Candidate, EinsteinSolution, SolutionFamily, SolveOptions};
use crate::space::{GroupFamily, SpaceSpec};
use crate::{Rational, RationalPoly};

fn min_k(family: GroupFamily) -> u64 {
    match family {
        GroupFamily::Orthogonal => 3,
        GroupFamily::Symplectic => 1,
    }
}

/// The quartic `F(z)` whose positive roots give the metrics `(x, x, 1, z, z)`
/// on blocks `(k, k, l)`.
pub fn quartic_build(family: GroupFamily, k: u64, l: u64) -> Result<RationalPoly> {
    if k < min_k(family) || l < 1 {
        return domain(format!("quartic needs k >= {}, l >= 1 (got k={k}, l={l})", min_k(family)));
    }
    let (k, l) = (k as i64, l as i64);
    let c = match family {
        GroupFamily::Orthogonal => [
            l * (k + l),
            -2 * l * (2 * k + l - 2),
            4 * k * k + 7 * k * l - 5 * k - 6 * l + 2,
            -2 * (6 * k * k + 3 * k * l - 10 * k - 2 * l + 4),
            2 * (5 * k * k - 7 * k + 2),
        ],
        GroupFamily::Symplectic => [
            2 * l * (k + l),
            -4 * l * (2 * k + l + 1),
            8 * k * k + 14 * k * l + 5 * k + 6 * l + 1,
            -4 * (6 * k * k + 3 * k * l + 5 * k + l + 1),
            2 * (10 * k * k + 7 * k + 1),
        ],
    };
    Ok(RationalPoly::new(c.iter().map(|&v| rat(v)).collect()))
}

/// `x = (k-2) z^2 / ((3k-2) z^2 + l)` (orthogonal) or `(k+1) z^2 / ((3k+1) z^2 + l)`.
pub fn quartic_recover_x(family: GroupFamily, k: u64, l: u64, z: &Rational) -> Rational {
    let (k, l) = (k as i64, l as i64);
    let (num, lin) = match family {
        GroupFamily::Orthogonal => (k - 2, 3 * k - 2),
        GroupFamily::Symplectic => (k + 1, 3 * k + 1),
    };
    let z2 = z * z;
    rat(num) * &z2 / (rat(lin) * &z2 + rat(l))
}

pub fn quartic_solve(family: GroupFamily, k: u64, l: u64) -> Result<Vec<EinsteinSolution>> {
    quartic_solve_with(family, k, l, &SolveOptions::default())
}

/// Non-Jensen metrics `(x, x, 1, z, z)` on `G(2k+l)/G(l)` from the positive roots of the quartic.
pub fn quartic_solve_with(family: GroupFamily, k: u64, l: u64, opts: &SolveOptions) -> Result<Vec<EinsteinSolution>> {
    let poly = quartic_build(family, k, l)?;
    let spec = SpaceSpec::three_block(family, 2, k, l)?;
    let functional = einstein_functional_unchecked(&spec)?;
    let reduced = three_block_form(family, 2, k, l)?.functional();
    let label = match family {
        GroupFamily::Orthogonal => SolutionFamily::QuarticSO,
        GroupFamily::Symplectic => SolutionFamily::QuarticSp,
    };
    let mut sols = Vec::new();
    for iv in isolate_positive_roots(&poly)? {
        let z = refine_root(&poly, &iv, &opts.eps)?;
        let x = quartic_recover_x(family, k, l, &z);
        let mut flags = Vec::new();
        if !(x > Rational::zero() && x < Rational::one()) {
            flags.push(format!("recovered x = {x} outside (0, 1)"));
        }
        if iv.multiplicity > 1 {
            flags.push(format!("root of multiplicity {}", iv.multiplicity));
        }
        let one = Rational::one();
        let cand = Candidate {
            spec: &spec,
            full: &functional,
            values: vec![x.clone(), x.clone(), one.clone(), z.clone(), z.clone()],
            reduced: Some((&reduced, [x.clone(), one.clone(), z.clone()])),
            five: Some((family, (k, k, l), [x.clone(), x, one, z.clone(), z])),
        };
        sols.push(root_candidate_solution(cand, label, iv, opts, flags)?);
    }
    Ok(finalize(sols))
}

/// Positive-root counts per cell, rows indexed by `l`, columns by `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountGrid {
    pub ks: Vec<u64>,
    pub ls: Vec<u64>,
    pub counts: Vec<Vec<usize>>,
}

impl CountGrid {
    pub fn get(&self, k: u64, l: u64) -> Option<usize> {
        let i = self.ls.iter().position(|&v| v == l)?;
        let j = self.ks.iter().position(|&v| v == k)?;
        Some(self.counts[i][j])
    }

    pub fn cells(&self) -> usize {
        self.ks.len() * self.ls.len()
    }

    /// Header row of `k`, then one row per `l`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("l\\k");
        for k in &self.ks {
            out.push_str(&format!(",{k}"));
        }
        out.push('\n');
        for (l, row) in self.ls.iter().zip(&self.counts) {
            out.push_str(&l.to_string());
            for c in row {
                out.push_str(&format!(",{c}"));
            }
            out.push('\n');
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{:>4} |", "k");
        for k in &self.ks {
            out.push_str(&format!("{k:>3}"));
        }
        out.push('\n');
        out.push_str(&format!("{:>4} |\n", "l"));
        out.push_str(&"-".repeat(6 + 3 * self.ks.len()));
        out.push('\n');
        for (l, row) in self.ls.iter().zip(&self.counts) {
            out.push_str(&format!("{l:>4} |"));
            for c in row {
                out.push_str(&format!("{c:>3}"));
            }
            out.push('\n');
        }
        out
    }

    pub fn parse_csv(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or_else(|| crate::Error::Domain("empty grid".into()))?;
        let num = |s: &str| {
            s.trim().parse::<u64>().map_err(|_| crate::Error::Domain(format!("bad grid entry {s:?}")))
        };
        let ks = header.split(',').skip(1).map(num).collect::<Result<Vec<_>>>()?;
        let mut ls = Vec::new();
        let mut counts = Vec::new();
        for line in lines {
            let mut cells = line.split(',');
            ls.push(num(cells.next().unwrap_or(""))?);
            let row = cells.map(|c| num(c).map(|v| v as usize)).collect::<Result<Vec<_>>>()?;
            if row.len() != ks.len() {
                return domain(format!("grid row for l={} has {} cells", ls.last().unwrap(), row.len()));
            }
            counts.push(row);
        }
        Ok(Self { ks, ls, counts })
    }

    /// Cells where `self` and `other` disagree, as `(k, l, other, self)`.
    pub fn mismatches(&self, other: &Self) -> Vec<(u64, u64, Option<usize>, usize)> {
        let mut out = Vec::new();
        for (i, &l) in self.ls.iter().enumerate() {
            for (j, &k) in self.ks.iter().enumerate() {
                let want = other.get(k, l);
                if want != Some(self.counts[i][j]) {
                    out.push((k, l, want, self.counts[i][j]));
                }
            }
        }
        out
    }
}

/// Exact Sturm counts over a grid, computed in parallel and assembled in `(l, k)` order.
pub fn table_sweep(family: GroupFamily, ks: RangeInclusive<u64>, ls: RangeInclusive<u64>) -> Result<CountGrid> {
    let ks: Vec<u64> = ks.collect();
    let ls: Vec<u64> = ls.collect();
    if ks.is_empty() || ls.is_empty() {
        return domain("empty sweep range");
    }
    let counts = ls
        .par_iter()
        .map(|&l| {
            ks.iter()
                .map(|&k| sturm_count_positive(&quartic_build(family, k, l)?))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CountGrid { ks, ls, counts })
}

const TABLE_SO: &str = include_str!("../../data/quartic_counts_so.csv");
const TABLE_SP: &str = include_str!("../../data/quartic_counts_sp.csv");

/// The reference grid for `k = 3..20`, `l = 1..20`.
pub fn expected_table(family: GroupFamily) -> CountGrid {
    let text = match family {
        GroupFamily::Orthogonal => TABLE_SO,
        GroupFamily::Symplectic => TABLE_SP,
    };
    CountGrid::parse_csv(text).expect("embedded table parses")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ratio;

    #[test]
    fn orthogonal_three_three_coefficients() {
        let p = quartic_build(GroupFamily::Orthogonal, 3, 3).unwrap();
        let want: Vec<Rational> = [18, -42, 68, -98, 52].iter().map(|&v| rat(v)).collect();
        assert_eq!(p.coeffs(), want.as_slice());
        assert_eq!(p.eval(&rat(1)), rat(-2));
    }

    #[test]
    fn symplectic_constant_term() {
        let p = quartic_build(GroupFamily::Symplectic, 3, 1).unwrap();
        assert_eq!(p.eval(&rat(0)), rat(8));
    }

    #[test]
    fn counts_from_solver_match_sturm() {
        for (family, k, l, n) in [
            (GroupFamily::Orthogonal, 3, 3, 2),
            (GroupFamily::Orthogonal, 4, 3, 0),
            (GroupFamily::Symplectic, 5, 1, 2),
            (GroupFamily::Symplectic, 6, 1, 0),
        ] {
            let sols = quartic_solve(family, k, l).unwrap();
            assert_eq!(sols.len(), n, "{family} k={k} l={l}");
            for s in &sols {
                assert!(s.certified(), "{:?}", s.flags);
                let x = &s.metric.values()[0];
                assert!(*x > rat(0) && *x < rat(1));
            }
        }
    }

    #[test]
    fn small_grid() {
        let g = table_sweep(GroupFamily::Orthogonal, 3..=5, 1..=3).unwrap();
        assert_eq!(g.counts, vec![vec![0, 0, 0], vec![0, 0, 0], vec![2, 0, 0]]);
        let csv = g.to_csv();
        assert_eq!(CountGrid::parse_csv(&csv).unwrap(), g);
    }

    #[test]
    fn embedded_tables_have_full_shape() {
        for family in [GroupFamily::Orthogonal, GroupFamily::Symplectic] {
            let t = expected_table(family);
            assert_eq!((t.ks.len(), t.ls.len(), t.cells()), (18, 20, 360));
        }
    }

    #[test]
    fn recovery_is_below_one() {
        let x = quartic_recover_x(GroupFamily::Orthogonal, 3, 3, &ratio(1, 2));
        assert_eq!(x, ratio(1, 4) / (ratio(7, 4) + rat(3)));
    }
}
