use nalgebra::DMatrix;

use crate::error::Result;
use crate::space::{GroupFamily, ModuleId, SpaceSpec};
use crate::Error;

/// Largest `n` the oracle accepts by default.
pub const ORTHOGONAL_CAP: u64 = 10;
pub const SYMPLECTIC_CAP: u64 = 5;

/// Real matrices spanning a Lie algebra, each labeled with the block
/// component it lives in. `Diagonal(a)` labels the `a`-th block subalgebra
/// for every block, including the isotropy blocks beyond `s`.
#[derive(Clone, Debug)]
pub struct MatrixBasis {
    pub elements: Vec<DMatrix<f64>>,
    pub labels: Vec<ModuleId>,
}

impl MatrixBasis {
    pub fn new(elements: Vec<DMatrix<f64>>, labels: Vec<ModuleId>) -> Self {
        assert_eq!(elements.len(), labels.len());
        Self { elements, labels }
    }

    pub fn dim(&self) -> usize {
        self.elements.len()
    }

    pub fn indices_of(&self, id: ModuleId) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.labels[i] == id).collect()
    }

    pub fn count(&self, id: ModuleId) -> usize {
        self.labels.iter().filter(|&&l| l == id).count()
    }

    pub fn restrict(&self, idx: &[usize]) -> Self {
        Self {
            elements: idx.iter().map(|&i| self.elements[i].clone()).collect(),
            labels: idx.iter().map(|&i| self.labels[i]).collect(),
        }
    }
}

/// Real 4x4 matrix of left multiplication by the quaternion `a + b i + c j + d k`.
fn quaternion_left(q: [f64; 4]) -> DMatrix<f64> {
    let [a, b, c, d] = q;
    DMatrix::from_row_slice(
        4,
        4,
        &[a, -b, -c, -d, b, a, -d, c, c, d, a, -b, d, -c, b, a],
    )
}

fn block_of(spec: &SpaceSpec) -> Vec<usize> {
    spec.blocks()
        .iter()
        .enumerate()
        .flat_map(|(i, &k)| std::iter::repeat(i + 1).take(k as usize))
        .collect()
}

fn label(blocks: &[usize], i: usize, j: usize) -> ModuleId {
    let (a, b) = (blocks[i].min(blocks[j]), blocks[i].max(blocks[j]));
    if a == b {
        ModuleId::Diagonal(a)
    } else {
        ModuleId::OffDiagonal(a, b)
    }
}

/// Basis of `so(n)` or `sp(n)` adapted to the block decomposition of `spec`.
///
/// `so(n)` uses `E_ij - E_ji`. `sp(n)` is realized as quaternionic
/// anti-Hermitian `n x n` matrices, embedded in real `4n x 4n` matrices via
/// left multiplication; the embedding is an injective Lie algebra map.
pub fn build_algebra(spec: &SpaceSpec) -> Result<MatrixBasis> {
    let cap = match spec.family() {
        GroupFamily::Orthogonal => ORTHOGONAL_CAP,
        GroupFamily::Symplectic => SYMPLECTIC_CAP,
    };
    build_algebra_with_cap(spec, cap)
}

pub fn build_algebra_with_cap(spec: &SpaceSpec, cap: u64) -> Result<MatrixBasis> {
    let n = spec.n();
    if n > cap {
        return Err(Error::CapExceeded(format!(
            "oracle refuses {}({n}): size cap is n <= {cap}",
            spec.family().group_name()
        )));
    }
    let n = n as usize;
    let blocks = block_of(spec);
    let mut elements = Vec::new();
    let mut labels = Vec::new();
    match spec.family() {
        GroupFamily::Orthogonal => {
            for i in 0..n {
                for j in i + 1..n {
                    let mut m = DMatrix::zeros(n, n);
                    m[(i, j)] = 1.0;
                    m[(j, i)] = -1.0;
                    elements.push(m);
                    labels.push(label(&blocks, i, j));
                }
            }
        }
        GroupFamily::Symplectic => {
            let units = [[1.0, 0.0, 0.0, 0.0], [0.0, 1.0, 0.0, 0.0], [0.0, 0.0, 1.0, 0.0], [0.0, 0.0, 0.0, 1.0]];
            let place = |m: &mut DMatrix<f64>, i: usize, j: usize, q: [f64; 4]| {
                m.view_mut((4 * i, 4 * j), (4, 4)).copy_from(&quaternion_left(q));
            };
            for i in 0..n {
                // imaginary units on the diagonal
                for u in &units[1..] {
                    let mut m = DMatrix::zeros(4 * n, 4 * n);
                    place(&mut m, i, i, *u);
                    elements.push(m);
                    labels.push(label(&blocks, i, i));
                }
                for j in i + 1..n {
                    // X_ij = q, X_ji = -conj(q)
                    for u in &units {
                        let conj = [u[0], -u[1], -u[2], -u[3]];
                        let mut m = DMatrix::zeros(4 * n, 4 * n);
                        place(&mut m, i, j, *u);
                        place(&mut m, j, i, conj.map(|v| -v));
                        elements.push(m);
                        labels.push(label(&blocks, i, j));
                    }
                }
            }
        }
    }
    Ok(MatrixBasis { elements, labels })
}

/// Whether `m` lies in the algebra: skew-symmetric, and for the symplectic
/// family also commuting with right multiplication by `i` and `j` blockwise.
pub fn is_member(family: GroupFamily, m: &DMatrix<f64>, tol: f64) -> bool {
    let skew = (m + m.transpose()).amax() <= tol;
    match family {
        GroupFamily::Orthogonal => skew,
        GroupFamily::Symplectic => {
            let n = m.nrows() / 4;
            let right = |q: [f64; 4]| {
                // right multiplication by q, blockwise
                let [a, b, c, d] = q;
                let r = DMatrix::from_row_slice(4, 4, &[a, -b, -c, -d, b, a, d, -c, c, -d, a, b, d, c, -b, a]);
                let mut big = DMatrix::zeros(4 * n, 4 * n);
                for i in 0..n {
                    big.view_mut((4 * i, 4 * i), (4, 4)).copy_from(&r);
                }
                big
            };
            skew && [[0.0, 1.0, 0.0, 0.0], [0.0, 0.0, 1.0, 0.0]].iter().all(|q| {
                let r = right(*q);
                (m * &r - &r * m).amax() <= tol
            })
        }
    }
}
