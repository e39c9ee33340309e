use std::collections::BTreeMap;

use nalgebra::DMatrix;

use crate::error::{domain, Result};
use crate::oracle::basis::{build_algebra, MatrixBasis};
use crate::oracle::lie::{
    ad_invariance_defect, killing_form, killing_form_from, structure_constants, BilinearForm,
    StructureConstants,
};
use crate::space::{ModuleId, SpaceSpec};
use crate::Rational;

/// The algebra of a spec with its structure constants and Killing form.
#[derive(Clone, Debug)]
pub struct LieOracle {
    pub spec: SpaceSpec,
    pub basis: MatrixBasis,
    pub constants: StructureConstants,
    pub killing: BilinearForm,
}

/// Basis of a subspace, orthonormal for `-B`, in coordinates of the ambient basis.
#[derive(Clone, Debug)]
pub struct Frame {
    /// Column `j` holds the coordinates of the `j`-th orthonormal vector.
    pub vectors: DMatrix<f64>,
    pub condition: f64,
    /// `max |W^T M W - I|`.
    pub orthonormality_defect: f64,
}

/// Brute-force triple symbols over all unordered triples of block components.
#[derive(Clone, Debug)]
pub struct BruteTable {
    pub entries: BTreeMap<[ModuleId; 3], f64>,
    pub dims: BTreeMap<ModuleId, usize>,
    /// Crude a-priori bound on the floating error of each entry.
    pub error_bound: f64,
    pub max_condition: f64,
    pub min_gram_eigenvalue: f64,
}

impl BruteTable {
    pub fn get(&self, a: ModuleId, b: ModuleId, c: ModuleId) -> f64 {
        let mut key = [a, b, c];
        key.sort();
        self.entries.get(&key).copied().unwrap_or(0.0)
    }
}

/// Outcome of the per-index Killing-ratio identity for a subalgebra `q` of `r`.
#[derive(Clone, Debug)]
pub struct KillingRatioReport {
    pub dim: usize,
    /// `alpha` read off `B_q = alpha B_r|_q` from the two Killing forms.
    pub alpha: f64,
    /// Largest deviation of `B_q` from `alpha B_r|_q` entrywise.
    pub alpha_spread: f64,
    /// `sum_{j,k} (-B_r([f_i, f_j], f_k))^2` for each orthonormal `f_i`.
    pub per_index: Vec<f64>,
    pub total: f64,
}

impl KillingRatioReport {
    /// Largest deviation of the per-index sums, the total and the ratio itself from `expected`.
    pub fn max_deviation(&self, expected: f64) -> f64 {
        let per = self.per_index.iter().map(|v| (v - expected).abs()).fold(0.0, f64::max);
        let total = if self.dim > 0 { (self.total - expected * self.dim as f64).abs() / self.dim as f64 } else { 0.0 };
        per.max(total).max((self.alpha - expected).abs()).max(self.alpha_spread)
    }
}

impl LieOracle {
    pub fn new(spec: &SpaceSpec) -> Result<Self> {
        let basis = build_algebra(spec)?;
        let constants = structure_constants(&basis)?;
        let killing = killing_form_from(&constants);
        Ok(Self { spec: spec.clone(), basis, constants, killing })
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    /// Orthonormalizes the span of `idx` for `-B` through the inverse square root of its Gram matrix.
    pub fn frame(&self, idx: &[usize]) -> Result<Frame> {
        let k = idx.len();
        if k == 0 {
            let vectors = DMatrix::zeros(self.dim(), 0);
            return Ok(Frame { vectors, condition: 1.0, orthonormality_defect: 0.0 });
        }
        let gram = DMatrix::from_fn(k, k, |a, b| -self.killing.gram[(idx[a], idx[b])]);
        let eig = gram.clone().symmetric_eigen();
        let (lo, hi) = eig.eigenvalues.iter().fold((f64::MAX, 0.0f64), |(lo, hi), &e| (lo.min(e), hi.max(e)));
        if lo <= 1e-12 {
            return domain(format!("Gram matrix of -B is not positive definite (eigenvalue {lo:.3e})"));
        }
        let inv_sqrt = DMatrix::from_diagonal(&eig.eigenvalues.map(|e| 1.0 / e.sqrt()));
        let w = &eig.eigenvectors * inv_sqrt * eig.eigenvectors.transpose();
        let check = w.transpose() * &gram * &w - DMatrix::identity(k, k);
        let mut vectors = DMatrix::zeros(self.dim(), k);
        for (a, &i) in idx.iter().enumerate() {
            for j in 0..k {
                vectors[(i, j)] = w[(a, j)];
            }
        }
        Ok(Frame {
            vectors,
            condition: hi / lo,
            orthonormality_defect: check.amax(),
        })
    }

    /// `T[i][j][k] = <[f_i, f_j], f_k>` with `<,> = -B`, for the columns of `frame`.
    fn lowered(&self, frame: &DMatrix<f64>) -> Vec<DMatrix<f64>> {
        let dim = self.dim();
        let k = frame.ncols();
        // -C_p B for each ambient p: (q, r) entries -sum_s c[p][q][s] B[s][r]
        let low: Vec<DMatrix<f64>> = (0..dim)
            .map(|p| {
                let cp = DMatrix::from_fn(dim, dim, |q, s| self.constants.get(p, q, s));
                -(cp * &self.killing.gram)
            })
            .collect();
        (0..k)
            .map(|i| {
                let mut slice = DMatrix::zeros(dim, dim);
                for (p, lp) in low.iter().enumerate() {
                    let w = frame[(p, i)];
                    if w != 0.0 {
                        slice += lp * w;
                    }
                }
                frame.transpose() * slice * frame
            })
            .collect()
    }

    /// All triple symbols over the block components of the algebra.
    pub fn triple_symbols(&self) -> Result<BruteTable> {
        let ids = self.spec.all_ids();
        let mut columns = Vec::new();
        let mut groups: BTreeMap<ModuleId, std::ops::Range<usize>> = BTreeMap::new();
        let mut max_condition: f64 = 1.0;
        let mut defect: f64 = 0.0;
        let mut min_eig = f64::MAX;
        for id in &ids {
            let idx = self.basis.indices_of(*id);
            let frame = self.frame(&idx)?;
            if !idx.is_empty() {
                let gram = DMatrix::from_fn(idx.len(), idx.len(), |a, b| -self.killing.gram[(idx[a], idx[b])]);
                min_eig = min_eig.min(gram.symmetric_eigenvalues().min());
            }
            max_condition = max_condition.max(frame.condition);
            defect = defect.max(frame.orthonormality_defect);
            let start = columns.len();
            columns.extend(frame.vectors.column_iter().map(|c| c.into_owned()));
            groups.insert(*id, start..columns.len());
        }
        let full = DMatrix::from_columns(&columns);
        let t = self.lowered(&full);

        let mut entries = BTreeMap::new();
        let mut biggest: f64 = 0.0;
        for (a, ia) in ids.iter().enumerate() {
            for (b, ib) in ids.iter().enumerate().skip(a) {
                for ic in ids.iter().skip(b) {
                    let mut sum = 0.0;
                    for i in groups[ia].clone() {
                        for j in groups[ib].clone() {
                            for k in groups[ic].clone() {
                                sum += t[i][(j, k)].powi(2);
                            }
                        }
                    }
                    biggest = biggest.max(sum);
                    let mut key = [*ia, *ib, *ic];
                    key.sort();
                    entries.insert(key, sum);
                }
            }
        }
        let dims = groups.iter().map(|(id, r)| (*id, r.len())).collect();
        let n = self.dim() as f64;
        let error_bound = (biggest.max(1.0) * (defect + 16.0 * n * n * f64::EPSILON * max_condition)) * 8.0;
        Ok(BruteTable { entries, dims, error_bound, max_condition, min_gram_eigenvalue: min_eig })
    }

    /// Checks the Killing-ratio identity for the subalgebra spanned by `sub`.
    pub fn killing_ratio_report(&self, sub: &[usize]) -> Result<KillingRatioReport> {
        let dim = sub.len();
        let own = killing_form(&self.basis.restrict(sub))?;
        let restricted = DMatrix::from_fn(dim, dim, |a, b| self.killing.gram[(sub[a], sub[b])]);
        let alpha = if dim == 0 { 0.0 } else { own.gram.trace() / restricted.trace() };
        let alpha_spread = if dim == 0 { 0.0 } else { (&own.gram - &restricted * alpha).amax() / restricted.amax() };
        let frame = self.frame(sub)?;
        let t = self.lowered(&frame.vectors);
        let per_index: Vec<f64> = t.iter().map(|m| m.iter().map(|v| v * v).sum()).collect();
        let total = per_index.iter().sum();
        Ok(KillingRatioReport { dim, alpha, alpha_spread, per_index, total })
    }

    pub fn ad_invariance(&self) -> f64 {
        ad_invariance_defect(&self.constants, &self.killing)
    }

    /// Largest structure constant forbidden by the block pattern:
    /// `[g_a, g_b] = 0` for distinct blocks and `[g_a, p_(a,b)] in p_(a,b)`.
    pub fn bracket_consistency(&self) -> f64 {
        let dim = self.dim();
        let labels = &self.basis.labels;
        let mut worst: f64 = 0.0;
        for i in 0..dim {
            let ModuleId::Diagonal(a) = labels[i] else { continue };
            for j in 0..dim {
                let allowed: Option<ModuleId> = match labels[j] {
                    ModuleId::Diagonal(b) if b != a => None,
                    ModuleId::OffDiagonal(x, y) if x == a || y == a => Some(labels[j]),
                    _ => continue,
                };
                for r in 0..dim {
                    if Some(labels[r]) != allowed {
                        worst = worst.max(self.constants.get(i, j, r).abs());
                    }
                }
            }
        }
        worst
    }

    /// Standard-metric scalar curvature `1/2 sum d - 1/4 sum [abc]` from brute-force data only.
    pub fn standard_scalar_curvature(&self, table: &BruteTable) -> f64 {
        let summands: Vec<ModuleId> = self.spec.modules();
        let mut s = 0.5 * summands.iter().map(|id| table.dims[id] as f64).sum::<f64>();
        for a in &summands {
            for b in &summands {
                for c in &summands {
                    s -= 0.25 * table.get(*a, *b, *c);
                }
            }
        }
        s
    }
}

pub fn brute_triple_symbols(spec: &SpaceSpec) -> Result<BruteTable> {
    LieOracle::new(spec)?.triple_symbols()
}

/// Per-index identity for the subalgebra of `basis` spanned by the elements `sub`.
pub fn verify_killing_ratio(basis: &MatrixBasis, spec: &SpaceSpec, sub: &[usize]) -> Result<KillingRatioReport> {
    let constants = structure_constants(basis)?;
    let killing = killing_form_from(&constants);
    let oracle = LieOracle { spec: spec.clone(), basis: basis.clone(), constants, killing };
    oracle.killing_ratio_report(sub)
}

#[derive(Clone, Debug)]
pub struct TripleRow {
    pub ids: [ModuleId; 3],
    pub closed: Rational,
    pub brute: f64,
    pub deviation: f64,
}

#[derive(Clone, Debug)]
pub struct RatioRow {
    /// Block indices spanning the subalgebra.
    pub blocks: Vec<usize>,
    pub k: u64,
    pub closed: Rational,
    pub measured: f64,
    pub deviation: f64,
}

/// Closed forms against the brute-force oracle for one spec.
#[derive(Clone, Debug)]
pub struct OracleReport {
    pub spec: SpaceSpec,
    pub triples: Vec<TripleRow>,
    pub ratios: Vec<RatioRow>,
    pub ad_invariance: f64,
    pub bracket_consistency: f64,
    pub closure_residual: f64,
    pub min_gram_eigenvalue: f64,
    pub max_condition: f64,
    pub error_bound: f64,
}

impl OracleReport {
    pub fn max_triple_deviation(&self) -> f64 {
        self.triples.iter().map(|r| r.deviation).fold(0.0, f64::max)
    }

    pub fn max_ratio_deviation(&self) -> f64 {
        self.ratios.iter().map(|r| r.deviation).fold(0.0, f64::max)
    }

    pub fn passes(&self, tol: f64) -> bool {
        self.max_triple_deviation() < tol
            && self.max_ratio_deviation() < tol
            && self.ad_invariance < 1e-10
            && self.bracket_consistency < 1e-10
            && self.min_gram_eigenvalue > 0.0
    }
}

pub fn compare_with_closed_forms(spec: &SpaceSpec) -> Result<OracleReport> {
    let oracle = LieOracle::new(spec)?;
    let brute = oracle.triple_symbols()?;
    let closed = spec.triple_symbols();
    let to_f = crate::scalar::rational_to_f64;

    let triples = brute
        .entries
        .iter()
        .map(|(ids, &b)| {
            let c = closed.get(ids[0], ids[1], ids[2]);
            TripleRow { ids: *ids, deviation: (to_f(&c) - b).abs(), closed: c, brute: b }
        })
        .collect();

    let m = spec.blocks().len();
    let mut groups: Vec<Vec<usize>> = (1..=m).map(|a| vec![a]).collect();
    for a in 1..=m {
        for b in a + 1..=m {
            groups.push(vec![a, b]);
        }
    }
    let mut ratios = Vec::new();
    for blocks in groups {
        let k: u64 = blocks.iter().map(|&a| spec.block(a)).sum();
        let mut ids: Vec<ModuleId> = blocks.iter().map(|&a| ModuleId::Diagonal(a)).collect();
        if let [a, b] = blocks[..] {
            ids.push(ModuleId::OffDiagonal(a, b));
        }
        let sub: Vec<usize> = (0..oracle.dim()).filter(|&i| ids.contains(&oracle.basis.labels[i])).collect();
        // so(1) is empty; so(2) is abelian and still has ratio 0
        let Ok(closed) = spec.killing_ratio(k) else { continue };
        if sub.is_empty() {
            continue;
        }
        let report = oracle.killing_ratio_report(&sub)?;
        let deviation = report.max_deviation(to_f(&closed));
        ratios.push(RatioRow { blocks, k, closed, measured: report.alpha, deviation });
    }

    Ok(OracleReport {
        spec: spec.clone(),
        triples,
        ratios,
        ad_invariance: oracle.ad_invariance(),
        bracket_consistency: oracle.bracket_consistency(),
        closure_residual: oracle.constants.closure_residual,
        min_gram_eigenvalue: brute.min_gram_eigenvalue,
        max_condition: brute.max_condition,
        error_bound: brute.error_bound,
    })
}
