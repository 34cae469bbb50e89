use nalgebra::DMatrix;

use crate::{Error, Result, C64};

/// Eigenpairs of a Hermitian matrix, eigenvalues in ascending order.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    /// Column `k` is the eigenvector of `values[k]`.
    pub vectors: DMatrix<C64>,
}

fn to_matrix(data: &[C64], dim: usize) -> Result<DMatrix<C64>> {
    if data.len() != dim * dim {
        return Err(Error::DimensionMismatch {
            expected: dim * dim,
            found: data.len(),
        });
    }
    Ok(DMatrix::from_row_slice(dim, dim, data))
}

/// Full eigendecomposition of a row-major Hermitian matrix. Only the lower
/// triangle is read.
pub fn hermitian_eigen(data: &[C64], dim: usize) -> Result<HermitianEigen> {
    let m = to_matrix(data, dim)?;
    let eig = m.symmetric_eigen();
    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vectors = DMatrix::from_fn(dim, dim, |r, c| eig.eigenvectors[(r, order[c])]);
    Ok(HermitianEigen { values, vectors })
}

/// Eigenvalues only, ascending.
pub fn hermitian_eigenvalues(data: &[C64], dim: usize) -> Result<Vec<f64>> {
    let m = to_matrix(data, dim)?;
    let mut values: Vec<f64> = m.symmetric_eigenvalues().iter().copied().collect();
    values.sort_by(f64::total_cmp);
    Ok(values)
}
