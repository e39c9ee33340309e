use nalgebra::{DMatrix, DVector};

use crate::error::{domain, Result};
use crate::oracle::basis::MatrixBasis;

/// Structure constants `[b_i, b_j] = sum_k c[i][j][k] b_k` of a matrix basis.
#[derive(Clone, Debug)]
pub struct StructureConstants {
    dim: usize,
    data: Vec<f64>,
    /// Largest entry of `[b_i, b_j] - sum_k c_ijk b_k` over all pairs.
    pub closure_residual: f64,
}

/// A symmetric bilinear form in a basis.
#[derive(Clone, Debug)]
pub struct BilinearForm {
    pub gram: DMatrix<f64>,
}

impl StructureConstants {
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize) -> f64 {
        self.data[(i * self.dim + j) * self.dim + k]
    }

    /// Matrix of `ad(b_i)` acting on coordinate vectors.
    pub fn ad(&self, i: usize) -> DMatrix<f64> {
        DMatrix::from_fn(self.dim, self.dim, |k, m| self.get(i, m, k))
    }
}

fn flatten(m: &DMatrix<f64>) -> DVector<f64> {
    DVector::from_column_slice(m.as_slice())
}

/// Brackets every pair of basis elements and expresses the result in the basis
/// by least squares against the Frobenius inner product.
pub fn structure_constants(basis: &MatrixBasis) -> Result<StructureConstants> {
    let dim = basis.dim();
    let flat: Vec<DVector<f64>> = basis.elements.iter().map(flatten).collect();
    let gram = DMatrix::from_fn(dim, dim, |i, j| flat[i].dot(&flat[j]));
    let Some(chol) = gram.clone().cholesky() else {
        return domain("basis elements are linearly dependent");
    };
    let mut data = vec![0.0; dim * dim * dim];
    let mut closure_residual: f64 = 0.0;
    for i in 0..dim {
        for j in i + 1..dim {
            let (a, b) = (&basis.elements[i], &basis.elements[j]);
            let br = a * b - b * a;
            let v = flatten(&br);
            let rhs = DVector::from_fn(dim, |k, _| flat[k].dot(&v));
            let c = chol.solve(&rhs);
            let mut back = DVector::zeros(v.len());
            for k in 0..dim {
                if c[k] != 0.0 {
                    back.axpy(c[k], &flat[k], 1.0);
                }
            }
            closure_residual = closure_residual.max((v - back).amax());
            for k in 0..dim {
                data[(i * dim + j) * dim + k] = c[k];
                data[(j * dim + i) * dim + k] = -c[k];
            }
        }
    }
    if closure_residual > 1e-9 {
        return domain(format!(
            "basis is not closed under the bracket (residual {closure_residual:.2e})"
        ));
    }
    Ok(StructureConstants { dim, data, closure_residual })
}

/// `B(b_i, b_j) = trace(ad b_i ad b_j)`, computed in the adjoint representation.
pub fn killing_form_from(c: &StructureConstants) -> BilinearForm {
    let dim = c.dim();
    let ads: Vec<DMatrix<f64>> = (0..dim).map(|i| c.ad(i)).collect();
    let transposed: Vec<DMatrix<f64>> = ads.iter().map(DMatrix::transpose).collect();
    // trace(A B) = sum of the entrywise product of A and B^T
    let gram = DMatrix::from_fn(dim, dim, |i, j| ads[i].component_mul(&transposed[j]).sum());
    BilinearForm { gram }
}

pub fn killing_form(basis: &MatrixBasis) -> Result<BilinearForm> {
    Ok(killing_form_from(&structure_constants(basis)?))
}

/// `max |B([x,y],z) + B(y,[x,z])|` over basis triples.
pub fn ad_invariance_defect(c: &StructureConstants, b: &BilinearForm) -> f64 {
    let dim = c.dim();
    let mut worst: f64 = 0.0;
    for x in 0..dim {
        for y in 0..dim {
            for z in 0..dim {
                let mut v = 0.0;
                for r in 0..dim {
                    v += c.get(x, y, r) * b.gram[(r, z)] + c.get(x, z, r) * b.gram[(y, r)];
                }
                worst = worst.max(v.abs());
            }
        }
    }
    worst
}
