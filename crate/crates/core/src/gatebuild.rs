//! Register-wide gate matrices built from a single 2×2 operation.
//!
//! Two constructions produce the same matrix `I ⊗ … ⊗ U ⊗ … ⊗ I`:
//! [`build_gate_kron`] chains Kronecker products with identities, while
//! [`build_gate_block`] scales identity blocks by the entries of `U` and then
//! doubles the result block-diagonally. Both are kept as public entry points so
//! the benchmark harness can time them against each other.

use std::collections::BTreeSet;

use crate::register::check_qubit;
use crate::sparse::SparseMatrix;
use crate::{Error, Result, C64};

/// A 2×2 complex operation `[[u11, u12], [u21, u22]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SingleQubitOp {
    pub u11: C64,
    pub u12: C64,
    pub u21: C64,
    pub u22: C64,
}

impl SingleQubitOp {
    pub const fn new(u11: C64, u12: C64, u21: C64, u22: C64) -> Self {
        Self { u11, u12, u21, u22 }
    }

    pub fn from_real(u11: f64, u12: f64, u21: f64, u22: f64) -> Self {
        Self::new(
            C64::new(u11, 0.0),
            C64::new(u12, 0.0),
            C64::new(u21, 0.0),
            C64::new(u22, 0.0),
        )
    }

    pub fn identity() -> Self {
        Self::from_real(1.0, 0.0, 0.0, 1.0)
    }

    pub fn not() -> Self {
        Self::from_real(0.0, 1.0, 1.0, 0.0)
    }

    pub fn hadamard() -> Self {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        Self::from_real(s, s, s, -s)
    }

    /// Matrix product `self · rhs`.
    pub fn mul(&self, rhs: &Self) -> Self {
        Self {
            u11: self.u11 * rhs.u11 + self.u12 * rhs.u21,
            u12: self.u11 * rhs.u12 + self.u12 * rhs.u22,
            u21: self.u21 * rhs.u11 + self.u22 * rhs.u21,
            u22: self.u21 * rhs.u12 + self.u22 * rhs.u22,
        }
    }

    pub fn adjoint(&self) -> Self {
        Self {
            u11: self.u11.conj(),
            u12: self.u21.conj(),
            u21: self.u12.conj(),
            u22: self.u22.conj(),
        }
    }

    pub fn det(&self) -> C64 {
        self.u11 * self.u22 - self.u12 * self.u21
    }

    /// Largest entry of `|U†U − I|`.
    pub fn unitarity_error(&self) -> f64 {
        let p = self.adjoint().mul(self);
        let one = C64::new(1.0, 0.0);
        [
            (p.u11 - one).norm(),
            p.u12.norm(),
            p.u21.norm(),
            (p.u22 - one).norm(),
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }

    /// Largest entrywise distance to another operation.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        [
            (self.u11 - other.u11).norm(),
            (self.u12 - other.u12).norm(),
            (self.u21 - other.u21).norm(),
            (self.u22 - other.u22).norm(),
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }

    pub fn to_sparse(&self) -> SparseMatrix {
        SparseMatrix::from_dense(2, 2, &[self.u11, self.u12, self.u21, self.u22])
            .expect("2x2 shape")
    }
}

/// Sparse gate acting on a whole `n`-qubit register.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseGate {
    n: usize,
    matrix: SparseMatrix,
}

impl SparseGate {
    pub fn from_matrix(n: usize, matrix: SparseMatrix) -> Result<Self> {
        let dim = 1usize << n;
        if matrix.rows() != dim || matrix.cols() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: matrix.rows(),
            });
        }
        Ok(Self { n, matrix })
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        1 << self.n
    }

    pub fn nnz(&self) -> usize {
        self.matrix.nnz()
    }

    pub fn matrix(&self) -> &SparseMatrix {
        &self.matrix
    }

    /// Entry at 1-based `(row, col)`.
    pub fn entry(&self, row: usize, col: usize) -> C64 {
        self.matrix.get(row - 1, col - 1)
    }

    /// Largest entry of `|G†G − I|`.
    pub fn unitarity_error(&self) -> f64 {
        let p = self.matrix.adjoint().matmul(&self.matrix).expect("square");
        let mut worst = 0.0f64;
        for (r, c, v) in p.triplets() {
            let expect = if r == c { 1.0 } else { 0.0 };
            worst = worst.max((v - C64::new(expect, 0.0)).norm());
        }
        // diagonal entries missing from the product count as |0 - 1|
        for i in 0..self.dim() {
            if p.get(i, i) == C64::new(0.0, 0.0) {
                worst = worst.max(1.0);
            }
        }
        worst
    }
}

/// `I_{2^(target−1)} ⊗ U ⊗ I_{2^(n−target)}` via Kronecker products.
pub fn build_gate_kron(u: &SingleQubitOp, n: usize, target: usize) -> Result<SparseGate> {
    check_qubit(target, n)?;
    let u = u.to_sparse();
    let matrix = if target == n {
        SparseMatrix::identity(1 << (n - 1)).kron(&u)
    } else if target == 1 {
        u.kron(&SparseMatrix::identity(1 << (n - 1)))
    } else {
        SparseMatrix::identity(1 << (target - 1))
            .kron(&u)
            .kron(&SparseMatrix::identity(1 << (n - target)))
    };
    SparseGate::from_matrix(n, matrix)
}

/// Same matrix as [`build_gate_kron`], assembled from scaled identity blocks
/// of size `2^(n−target)` followed by `target − 1` block-diagonal doublings.
pub fn build_gate_block(u: &SingleQubitOp, n: usize, target: usize) -> Result<SparseGate> {
    check_qubit(target, n)?;
    let len = 1usize << (n - target);
    let upleft = SparseMatrix::scaled_identity(len, u.u11);
    let upright = SparseMatrix::scaled_identity(len, u.u12);
    let downleft = SparseMatrix::scaled_identity(len, u.u21);
    let downright = SparseMatrix::scaled_identity(len, u.u22);
    let mut gate = SparseMatrix::block(&upleft, &upright, &downleft, &downright)?;
    for _ in 1..target {
        let none = SparseMatrix::zeros(gate.rows(), gate.cols());
        gate = SparseMatrix::block(&gate, &none, &none, &gate)?;
    }
    SparseGate::from_matrix(n, gate)
}

/// Embeds `u` on `target`, firing only when every qubit in `controls` is 1.
///
/// Built as a sum of projector terms: each control pattern other than
/// all-ones contributes an identity on the remaining qubits, and the
/// all-ones pattern contributes `U` on the target. Rows whose control bits
/// are not all set are therefore exact identity rows.
pub fn build_controlled(
    u: &SingleQubitOp,
    n: usize,
    controls: &BTreeSet<usize>,
    target: usize,
) -> Result<SparseGate> {
    check_qubit(target, n)?;
    for &c in controls {
        check_qubit(c, n)?;
    }
    if controls.contains(&target) {
        return Err(Error::OverlappingQubits(target));
    }
    if controls.is_empty() {
        return build_gate_kron(u, n, target);
    }

    let ctrl: Vec<usize> = controls.iter().copied().collect();
    let k = ctrl.len();
    let one = C64::new(1.0, 0.0);
    let proj = |bit: usize| {
        let entries = if bit == 0 {
            [
                one,
                C64::new(0.0, 0.0),
                C64::new(0.0, 0.0),
                C64::new(0.0, 0.0),
            ]
        } else {
            [
                C64::new(0.0, 0.0),
                C64::new(0.0, 0.0),
                C64::new(0.0, 0.0),
                one,
            ]
        };
        SparseMatrix::from_dense(2, 2, &entries).expect("2x2 shape")
    };
    let u_sparse = u.to_sparse();
    let id2 = SparseMatrix::identity(2);

    let dim = 1usize << n;
    let mut total = SparseMatrix::zeros(dim, dim);
    for pattern in 0..(1usize << k) {
        let all_ones = pattern == (1 << k) - 1;
        let mut term = SparseMatrix::identity(1);
        for q in 1..=n {
            let factor = if let Some(pos) = ctrl.iter().position(|&c| c == q) {
                proj((pattern >> pos) & 1)
            } else if q == target && all_ones {
                u_sparse.clone()
            } else {
                id2.clone()
            };
            term = term.kron(&factor);
        }
        total = total.add(&term)?;
    }
    SparseGate::from_matrix(n, total)
}
