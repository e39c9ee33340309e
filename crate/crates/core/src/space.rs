//! The homogeneous space `G/H`, its isotropy summands, dimensions, Killing
//! ratios and closed-form triple symbols `[abc]`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{domain, Error, Result};
use crate::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupFamily {
    Orthogonal,
    Symplectic,
}

impl GroupFamily {
    /// Short CLI tag: `so` or `sp`.
    pub fn tag(self) -> &'static str {
        match self {
            GroupFamily::Orthogonal => "so",
            GroupFamily::Symplectic => "sp",
        }
    }

    pub fn group_name(self) -> &'static str {
        match self {
            GroupFamily::Orthogonal => "SO",
            GroupFamily::Symplectic => "Sp",
        }
    }

    /// Dimension of `so(k)` or `sp(k)`.
    pub fn algebra_dim(self, k: u64) -> u64 {
        match self {
            GroupFamily::Orthogonal => k * k.saturating_sub(1) / 2,
            GroupFamily::Symplectic => 2 * k * k + k,
        }
    }

    /// Dimension of the summand `p_i` for a block of size `k`.
    pub fn diagonal_dim(self, k: u64) -> u64 {
        self.algebra_dim(k)
    }

    /// Dimension of the summand `p_(i,j)`.
    pub fn off_diagonal_dim(self, ki: u64, kj: u64) -> u64 {
        match self {
            GroupFamily::Orthogonal => ki * kj,
            GroupFamily::Symplectic => 4 * ki * kj,
        }
    }

    /// Smallest ambient size for which the Killing form is nondegenerate.
    pub fn min_n(self) -> u64 {
        match self {
            GroupFamily::Orthogonal => 3,
            GroupFamily::Symplectic => 1,
        }
    }
}

impl fmt::Display for GroupFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for GroupFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "so" | "orthogonal" => Ok(GroupFamily::Orthogonal),
            "sp" | "symplectic" => Ok(GroupFamily::Symplectic),
            other => domain(format!("unknown group family {other:?} (expected so or sp)")),
        }
    }
}

/// An irreducible summand of `p`. Indices are 1-based block indices.
///
/// `Diagonal(a)` with `a > s` names the subalgebra of the `a`-th isotropy
/// block; it is not a summand of `p` but the oracle and the triple-symbol
/// table still refer to it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ModuleId {
    Diagonal(usize),
    OffDiagonal(usize, usize),
}

impl fmt::Display for ModuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModuleId::Diagonal(i) => write!(f, "p{i}"),
            ModuleId::OffDiagonal(i, j) => write!(f, "p({i},{j})"),
        }
    }
}

impl FromStr for ModuleId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let body = t
            .strip_prefix('p')
            .ok_or_else(|| Error::Domain(format!("module id {t:?} must start with 'p'")))?;
        if let Some(inner) = body.strip_prefix('(').and_then(|b| b.strip_suffix(')')) {
            let (i, j) = inner
                .split_once(',')
                .ok_or_else(|| Error::Domain(format!("bad module id {t:?}")))?;
            let i = i.trim().parse().map_err(|_| Error::Domain(format!("bad module id {t:?}")))?;
            let j = j.trim().parse().map_err(|_| Error::Domain(format!("bad module id {t:?}")))?;
            Ok(ModuleId::OffDiagonal(i, j))
        } else {
            body.parse()
                .map(ModuleId::Diagonal)
                .map_err(|_| Error::Domain(format!("bad module id {t:?}")))
        }
    }
}

/// Outcome of the genericity test for diagonal metrics.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenericCheck {
    pub generic: bool,
    pub reason: Option<String>,
}

/// `G/H` with `G = SO(n)` or `Sp(n)`, `n = sum(blocks)`, and `H` the product
/// over the last `t` blocks; the first `s` blocks carry the extra symmetry.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SpaceSpec {
    family: GroupFamily,
    blocks: Vec<u64>,
    s: usize,
}

impl SpaceSpec {
    pub fn new(family: GroupFamily, blocks: Vec<u64>, s: usize) -> Result<Self> {
        if blocks.is_empty() {
            return domain("at least one block is required");
        }
        if s > blocks.len() {
            return domain(format!("s = {s} exceeds the number of blocks {}", blocks.len()));
        }
        if blocks.iter().any(|&k| k == 0) {
            return domain("block sizes must be positive");
        }
        let n: u64 = blocks.iter().sum();
        if n < 2 || n < family.min_n() {
            return domain(format!(
                "{}({n}) is too small (need n >= {})",
                family.group_name(),
                family.min_n().max(2)
            ));
        }
        Ok(Self { family, blocks, s })
    }

    /// `s` blocks of size `k` followed by one isotropy block of size `l`.
    pub fn three_block(family: GroupFamily, s: usize, k: u64, l: u64) -> Result<Self> {
        let mut blocks = vec![k; s];
        blocks.push(l);
        Self::new(family, blocks, s)
    }

    pub fn family(&self) -> GroupFamily {
        self.family
    }

    pub fn blocks(&self) -> &[u64] {
        &self.blocks
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn t(&self) -> usize {
        self.blocks.len() - self.s
    }

    pub fn n(&self) -> u64 {
        self.blocks.iter().sum()
    }

    /// Size of block `i` (1-based).
    pub fn block(&self, i: usize) -> u64 {
        self.blocks[i - 1]
    }

    /// Summands of `p`, diagonal first, then off-diagonal in lexicographic order.
    pub fn modules(&self) -> Vec<ModuleId> {
        let m = self.blocks.len();
        let mut out: Vec<ModuleId> = (1..=self.s).map(ModuleId::Diagonal).collect();
        for i in 1..=m {
            for j in i + 1..=m {
                out.push(ModuleId::OffDiagonal(i, j));
            }
        }
        out
    }

    /// All ids the triple-symbol table speaks about: every block subalgebra and every off-diagonal summand.
    pub fn all_ids(&self) -> Vec<ModuleId> {
        let m = self.blocks.len();
        let mut out: Vec<ModuleId> = (1..=m).map(ModuleId::Diagonal).collect();
        for i in 1..=m {
            for j in i + 1..=m {
                out.push(ModuleId::OffDiagonal(i, j));
            }
        }
        out
    }

    pub fn is_summand(&self, id: ModuleId) -> bool {
        match id {
            ModuleId::Diagonal(i) => (1..=self.s).contains(&i),
            ModuleId::OffDiagonal(i, j) => i >= 1 && i < j && j <= self.blocks.len(),
        }
    }

    fn valid_id(&self, id: ModuleId) -> bool {
        match id {
            ModuleId::Diagonal(i) => (1..=self.blocks.len()).contains(&i),
            ModuleId::OffDiagonal(..) => self.is_summand(id),
        }
    }

    /// `d_i` or `d_(i,j)`.
    pub fn module_dimension(&self, id: ModuleId) -> Result<u64> {
        if !self.valid_id(id) {
            return domain(format!("{id} is not a module of {self}"));
        }
        Ok(match id {
            ModuleId::Diagonal(i) => self.family.diagonal_dim(self.block(i)),
            ModuleId::OffDiagonal(i, j) => {
                self.family.off_diagonal_dim(self.block(i), self.block(j))
            }
        })
    }

    /// Dimension of `G/H`.
    pub fn dim_p(&self) -> u64 {
        let h: u64 = self.blocks[self.s..].iter().map(|&k| self.family.algebra_dim(k)).sum();
        self.family.algebra_dim(self.n()) - h
    }

    /// `alpha` with `B_{g(k)} = alpha * B_{g(n)}` restricted, for the standard `g(k)` in `g(n)`.
    pub fn killing_ratio(&self, sub_block_size: u64) -> Result<Rational> {
        killing_ratio(self.family, self.n(), sub_block_size)
    }

    /// Closed-form triple symbols for every admissible index combination.
    pub fn triple_symbols(&self) -> TripleSymbolTable {
        let m = self.blocks.len();
        let n = self.n() as i64;
        let (den, scale) = match self.family {
            GroupFamily::Orthogonal => (2 * (n - 2), 1),
            GroupFamily::Symplectic => (n + 1, 2),
        };
        let k = |i: usize| self.block(i) as i64;
        // per-block factor: k-1 for so, 2k+1 for sp
        let own = |i: usize| match self.family {
            GroupFamily::Orthogonal => k(i) - 1,
            GroupFamily::Symplectic => 2 * k(i) + 1,
        };
        let sub = |i: usize| match self.family {
            GroupFamily::Orthogonal => k(i) - 2,
            GroupFamily::Symplectic => k(i) + 1,
        };
        let r = |num: i64| Rational::new(BigInt::from(num), BigInt::from(den));
        let mut table = TripleSymbolTable::default();
        for a in 1..=m {
            let d = ModuleId::Diagonal(a);
            table.insert([d, d, d], r(k(a) * own(a) * sub(a)));
        }
        for a in 1..=m {
            for b in a + 1..=m {
                let ab = ModuleId::OffDiagonal(a, b);
                table.insert([ModuleId::Diagonal(a), ab, ab], r(k(a) * k(b) * own(a)));
                table.insert([ModuleId::Diagonal(b), ab, ab], r(k(a) * k(b) * own(b)));
                for c in b + 1..=m {
                    let ids = [ab, ModuleId::OffDiagonal(b, c), ModuleId::OffDiagonal(a, c)];
                    table.insert(ids, r(scale * k(a) * k(b) * k(c)));
                }
            }
        }
        table
    }

    /// Whether no two summands are isomorphic, so the invariant metrics are diagonal.
    pub fn check_generic(&self) -> GenericCheck {
        if self.family == GroupFamily::Symplectic {
            return GenericCheck { generic: true, reason: None };
        }
        if let Some(i) = self.blocks.iter().position(|&k| k < 2) {
            return GenericCheck {
                generic: false,
                reason: Some(format!("block {} has size {} < 2", i + 1, self.blocks[i])),
            };
        }
        let twos = self.blocks[..self.s].iter().filter(|&&k| k == 2).count();
        if twos > 1 {
            return GenericCheck {
                generic: false,
                reason: Some(format!(
                    "{} diagonal blocks of size 2",
                    if twos == 2 { "two".to_string() } else { twos.to_string() }
                )),
            };
        }
        GenericCheck { generic: true, reason: None }
    }
}

impl fmt::Display for SpaceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = self.family.group_name();
        let h: Vec<String> = self.blocks[self.s..].iter().map(|k| format!("{g}({k})")).collect();
        let h = if h.is_empty() { "{e}".to_string() } else { h.join("x") };
        let blocks: Vec<String> = self.blocks.iter().map(u64::to_string).collect();
        write!(f, "{g}({})/{h} [blocks {}; s={}, t={}]", self.n(), blocks.join(","), self.s, self.t())
    }
}

/// `(k-2)/(n-2)` for `so(k)` in `so(n)`, `(k+1)/(n+1)` for `sp(k)` in `sp(n)`.
pub fn killing_ratio(family: GroupFamily, n: u64, k: u64) -> Result<Rational> {
    let n = n as i64;
    let k = k as i64;
    match family {
        GroupFamily::Orthogonal => {
            if n < 3 || k < 2 || k > n {
                return domain(format!("so({k}) in so({n}) is outside 2 <= k <= n, n >= 3"));
            }
            Ok(Rational::new(BigInt::from(k - 2), BigInt::from(n - 2)))
        }
        GroupFamily::Symplectic => {
            if k < 1 || k > n {
                return domain(format!("sp({k}) in sp({n}) is outside 1 <= k <= n"));
            }
            Ok(Rational::new(BigInt::from(k + 1), BigInt::from(n + 1)))
        }
    }
}

/// Triple symbols keyed by the sorted triple of ids; lookups are order independent.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct TripleSymbolTable {
    entries: BTreeMap<[ModuleId; 3], Rational>,
}

impl TripleSymbolTable {
    fn insert(&mut self, mut ids: [ModuleId; 3], value: Rational) {
        ids.sort();
        self.entries.insert(ids, value);
    }

    /// `[abc]`; zero for any pattern not in the table.
    pub fn get(&self, a: ModuleId, b: ModuleId, c: ModuleId) -> Rational {
        let mut ids = [a, b, c];
        ids.sort();
        self.entries.get(&ids).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&[ModuleId; 3], &Rational)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}
