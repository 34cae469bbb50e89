//! Compressed sparse row matrices over complex scalars.
//!
//! Only the operations needed to assemble register-wide gates are provided:
//! scaled identities, Kronecker products, 2×2 block concatenation, sums and
//! products. Exact zeros are never stored, so two matrices built from the
//! same scalars by different routes compare equal with `==`.

use crate::{Error, Result, C64};

#[derive(Debug, Clone, PartialEq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    row_ptr: Vec<usize>,
    col_idx: Vec<usize>,
    values: Vec<C64>,
}

impl SparseMatrix {
    /// All-zero matrix.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            row_ptr: vec![0; rows + 1],
            col_idx: Vec::new(),
            values: Vec::new(),
        }
    }

    /// `scale · I` of size `dim`. A zero scale yields an empty matrix.
    pub fn scaled_identity(dim: usize, scale: C64) -> Self {
        if scale == C64::new(0.0, 0.0) {
            return Self::zeros(dim, dim);
        }
        Self {
            rows: dim,
            cols: dim,
            row_ptr: (0..=dim).collect(),
            col_idx: (0..dim).collect(),
            values: vec![scale; dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::scaled_identity(dim, C64::new(1.0, 0.0))
    }

    /// Builds a matrix from dense row-major entries, dropping exact zeros.
    pub fn from_dense(rows: usize, cols: usize, data: &[C64]) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        let mut m = Self::zeros(rows, cols);
        m.row_ptr.clear();
        m.row_ptr.push(0);
        for r in 0..rows {
            for c in 0..cols {
                let v = data[r * cols + c];
                if v != C64::new(0.0, 0.0) {
                    m.col_idx.push(c);
                    m.values.push(v);
                }
            }
            m.row_ptr.push(m.col_idx.len());
        }
        Ok(m)
    }

    /// Builds a matrix from `(row, col, value)` triplets (0-based).
    /// Duplicate positions are summed; resulting exact zeros are dropped.
    pub fn from_triplets(
        rows: usize,
        cols: usize,
        triplets: &[(usize, usize, C64)],
    ) -> Result<Self> {
        let mut sorted = triplets.to_vec();
        for &(r, c, _) in &sorted {
            if r >= rows || c >= cols {
                return Err(Error::IndexOutOfRange {
                    index: r.max(c) + 1,
                    max: rows.max(cols),
                });
            }
        }
        sorted.sort_by_key(|&(r, c, _)| (r, c));
        let mut m = Self::zeros(rows, cols);
        m.row_ptr.clear();
        m.row_ptr.push(0);
        let mut it = sorted.into_iter().peekable();
        for r in 0..rows {
            while let Some(&(tr, tc, _)) = it.peek() {
                if tr != r {
                    break;
                }
                let mut acc = C64::new(0.0, 0.0);
                while let Some(&(rr, cc, v)) = it.peek() {
                    if rr == tr && cc == tc {
                        acc += v;
                        it.next();
                    } else {
                        break;
                    }
                }
                if acc != C64::new(0.0, 0.0) {
                    m.col_idx.push(tc);
                    m.values.push(acc);
                }
            }
            m.row_ptr.push(m.col_idx.len());
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Number of stored nonzero entries.
    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    /// Entry at 0-based `(row, col)`.
    pub fn get(&self, row: usize, col: usize) -> C64 {
        let (cols, vals) = self.row(row);
        match cols.binary_search(&col) {
            Ok(k) => vals[k],
            Err(_) => C64::new(0.0, 0.0),
        }
    }

    /// Column indices and values of one row.
    pub fn row(&self, row: usize) -> (&[usize], &[C64]) {
        let span = self.row_ptr[row]..self.row_ptr[row + 1];
        (&self.col_idx[span.clone()], &self.values[span])
    }

    /// Iterates over stored `(row, col, value)` triplets in row-major order.
    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, C64)> + '_ {
        (0..self.rows).flat_map(move |r| {
            let (c, v) = self.row(r);
            c.iter().zip(v).map(move |(&c, &v)| (r, c, v))
        })
    }

    pub fn to_dense(&self) -> Vec<C64> {
        let mut out = vec![C64::new(0.0, 0.0); self.rows * self.cols];
        for (r, c, v) in self.triplets() {
            out[r * self.cols + c] = v;
        }
        out
    }

    pub fn scale(&self, s: C64) -> Self {
        if s == C64::new(0.0, 0.0) {
            return Self::zeros(self.rows, self.cols);
        }
        let mut out = self.clone();
        for v in &mut out.values {
            *v *= s;
        }
        out.prune();
        out
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut counts = vec![0usize; self.cols + 1];
        for &c in &self.col_idx {
            counts[c + 1] += 1;
        }
        for i in 0..self.cols {
            counts[i + 1] += counts[i];
        }
        let row_ptr = counts.clone();
        let mut next = counts;
        let mut col_idx = vec![0; self.nnz()];
        let mut values = vec![C64::new(0.0, 0.0); self.nnz()];
        for (r, c, v) in self.triplets() {
            let slot = next[c];
            col_idx[slot] = r;
            values[slot] = v.conj();
            next[c] += 1;
        }
        Self {
            rows: self.cols,
            cols: self.rows,
            row_ptr,
            col_idx,
            values,
        }
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Self) -> Self {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut row_ptr = Vec::with_capacity(rows + 1);
        let mut col_idx = Vec::with_capacity(self.nnz() * other.nnz());
        let mut values = Vec::with_capacity(self.nnz() * other.nnz());
        row_ptr.push(0);
        for ra in 0..self.rows {
            let (ca, va) = self.row(ra);
            for rb in 0..other.rows {
                let (cb, vb) = other.row(rb);
                for (&c1, &v1) in ca.iter().zip(va) {
                    for (&c2, &v2) in cb.iter().zip(vb) {
                        let v = v1 * v2;
                        if v != C64::new(0.0, 0.0) {
                            col_idx.push(c1 * other.cols + c2);
                            values.push(v);
                        }
                    }
                }
                row_ptr.push(col_idx.len());
            }
        }
        Self {
            rows,
            cols,
            row_ptr,
            col_idx,
            values,
        }
    }

    /// Block concatenation `[upleft, upright; downleft, downright]`.
    pub fn block(upleft: &Self, upright: &Self, downleft: &Self, downright: &Self) -> Result<Self> {
        let check = |expected: usize, found: usize| {
            if expected == found {
                Ok(())
            } else {
                Err(Error::DimensionMismatch { expected, found })
            }
        };
        check(upleft.rows, upright.rows)?;
        check(downleft.rows, downright.rows)?;
        check(upleft.cols, downleft.cols)?;
        check(upright.cols, downright.cols)?;

        let rows = upleft.rows + downleft.rows;
        let cols = upleft.cols + upright.cols;
        let nnz = upleft.nnz() + upright.nnz() + downleft.nnz() + downright.nnz();
        let mut out = Self {
            rows,
            cols,
            row_ptr: Vec::with_capacity(rows + 1),
            col_idx: Vec::with_capacity(nnz),
            values: Vec::with_capacity(nnz),
        };
        out.row_ptr.push(0);
        for (left, right) in [(upleft, upright), (downleft, downright)] {
            for r in 0..left.rows {
                let (c, v) = left.row(r);
                out.col_idx.extend_from_slice(c);
                out.values.extend_from_slice(v);
                let (c, v) = right.row(r);
                out.col_idx.extend(c.iter().map(|&c| c + left.cols));
                out.values.extend_from_slice(v);
                out.row_ptr.push(out.col_idx.len());
            }
        }
        Ok(out)
    }

    /// Elementwise sum.
    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows * self.cols,
                found: other.rows * other.cols,
            });
        }
        let mut out = Self::zeros(self.rows, self.cols);
        out.row_ptr.clear();
        out.row_ptr.push(0);
        for r in 0..self.rows {
            let (ca, va) = self.row(r);
            let (cb, vb) = other.row(r);
            let (mut i, mut j) = (0, 0);
            while i < ca.len() || j < cb.len() {
                let (c, v) = if j == cb.len() || (i < ca.len() && ca[i] < cb[j]) {
                    i += 1;
                    (ca[i - 1], va[i - 1])
                } else if i == ca.len() || cb[j] < ca[i] {
                    j += 1;
                    (cb[j - 1], vb[j - 1])
                } else {
                    i += 1;
                    j += 1;
                    (ca[i - 1], va[i - 1] + vb[j - 1])
                };
                if v != C64::new(0.0, 0.0) {
                    out.col_idx.push(c);
                    out.values.push(v);
                }
            }
            out.row_ptr.push(out.col_idx.len());
        }
        Ok(out)
    }

    /// Sparse product `self · other`.
    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        out.row_ptr.clear();
        out.row_ptr.push(0);
        let mut acc = vec![C64::new(0.0, 0.0); other.cols];
        let mut touched = vec![false; other.cols];
        let mut pattern = Vec::new();
        for r in 0..self.rows {
            let (ca, va) = self.row(r);
            for (&k, &a) in ca.iter().zip(va) {
                let (cb, vb) = other.row(k);
                for (&c, &b) in cb.iter().zip(vb) {
                    if !touched[c] {
                        touched[c] = true;
                        pattern.push(c);
                    }
                    acc[c] += a * b;
                }
            }
            pattern.sort_unstable();
            for &c in &pattern {
                if acc[c] != C64::new(0.0, 0.0) {
                    out.col_idx.push(c);
                    out.values.push(acc[c]);
                }
                acc[c] = C64::new(0.0, 0.0);
                touched[c] = false;
            }
            pattern.clear();
            out.row_ptr.push(out.col_idx.len());
        }
        Ok(out)
    }

    fn prune(&mut self) {
        let mut row_ptr = Vec::with_capacity(self.rows + 1);
        let mut col_idx = Vec::with_capacity(self.nnz());
        let mut values = Vec::with_capacity(self.nnz());
        row_ptr.push(0);
        for (r, c, v) in self.triplets() {
            while row_ptr.len() <= r {
                row_ptr.push(col_idx.len());
            }
            if v != C64::new(0.0, 0.0) {
                col_idx.push(c);
                values.push(v);
            }
        }
        while row_ptr.len() <= self.rows {
            row_ptr.push(col_idx.len());
        }
        self.row_ptr = row_ptr;
        self.col_idx = col_idx;
        self.values = values;
    }
}
