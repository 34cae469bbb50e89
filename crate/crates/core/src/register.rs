//! Basis-state bookkeeping and the density-matrix value type.
//!
//! Basis states are labelled by tuples of bits `(b1, …, bn)` where `b1`
//! belongs to qubit 1 and is the most significant bit. The 1-based index of a
//! tuple is its binary value plus one, so `(0,…,0)` is row/column 1 and
//! `(1,…,1)` is row/column `2^n`.

use std::fmt;

use crate::gatebuild::SparseGate;
use crate::{Error, Result, C64};

/// Bit label of a computational basis state, qubit 1 first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BasisTuple {
    bits: Vec<u8>,
}

impl BasisTuple {
    pub fn new(bits: Vec<u8>) -> Result<Self> {
        if bits.is_empty() {
            return Err(Error::InvalidTuple(
                "tuple must contain at least one bit".into(),
            ));
        }
        if let Some(b) = bits.iter().find(|&&b| b > 1) {
            return Err(Error::InvalidTuple(format!("bit value {b} is not 0 or 1")));
        }
        Ok(Self { bits })
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    /// Number of qubits.
    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Bit of the given 1-based qubit.
    pub fn bit(&self, qubit: usize) -> u8 {
        self.bits[qubit - 1]
    }
}

impl fmt::Display for BasisTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, b) in self.bits.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{b}")?;
        }
        write!(f, ")")
    }
}

/// 1-based index of a basis tuple.
pub fn tuple_to_index(t: &BasisTuple) -> usize {
    t.bits
        .iter()
        .fold(0usize, |acc, &b| (acc << 1) | b as usize)
        + 1
}

/// Inverse of [`tuple_to_index`].
pub fn index_to_tuple(idx: usize, n: usize) -> Result<BasisTuple> {
    check_index(idx, n)?;
    let v = idx - 1;
    let bits = (0..n).map(|q| ((v >> (n - 1 - q)) & 1) as u8).collect();
    Ok(BasisTuple { bits })
}

/// Mask selecting qubit `qubit` (1-based) in a 0-based basis offset.
pub(crate) fn qubit_mask(qubit: usize, n: usize) -> usize {
    1 << (n - qubit)
}

pub(crate) fn check_index(idx: usize, n: usize) -> Result<()> {
    let max = 1usize << n;
    if idx == 0 || idx > max {
        return Err(Error::IndexOutOfRange { index: idx, max });
    }
    Ok(())
}

pub(crate) fn check_qubit(qubit: usize, n: usize) -> Result<()> {
    if qubit == 0 || qubit > n {
        return Err(Error::QubitOutOfRange { qubit, n });
    }
    Ok(())
}

/// Dense `2^n × 2^n` density matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    n: usize,
    dim: usize,
    data: Vec<C64>,
}

impl DensityMatrix {
    /// Pure basis state `|idx⟩⟨idx|` (1-based `idx`).
    pub fn pure_state(idx: usize, n: usize) -> Result<Self> {
        check_index(idx, n)?;
        let dim = 1usize << n;
        let mut data = vec![C64::new(0.0, 0.0); dim * dim];
        data[(idx - 1) * dim + (idx - 1)] = C64::new(1.0, 0.0);
        Ok(Self { n, dim, data })
    }

    /// Wraps raw row-major entries. Only the shape is checked, so this also
    /// serves as a plain matrix container for benchmarks.
    pub fn from_raw(n: usize, data: Vec<C64>) -> Result<Self> {
        let dim = 1usize << n;
        if data.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                found: data.len(),
            });
        }
        Ok(Self { n, dim, data })
    }

    pub fn zeros(n: usize) -> Self {
        let dim = 1usize << n;
        Self {
            n,
            dim,
            data: vec![C64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn data(&self) -> &[C64] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [C64] {
        &mut self.data
    }

    /// Entry at 1-based `(row, col)`.
    pub fn entry(&self, row: usize, col: usize) -> C64 {
        self.data[(row - 1) * self.dim + (col - 1)]
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self.data[i * self.dim + i]).sum()
    }

    /// Largest elementwise deviation `|ρ_ij − conj(ρ_ji)|`.
    pub fn hermiticity_error(&self) -> f64 {
        let d = self.dim;
        let mut worst = 0.0f64;
        for i in 0..d {
            for j in i..d {
                worst = worst.max((self.data[i * d + j] - self.data[j * d + i].conj()).norm());
            }
        }
        worst
    }

    /// Elementwise `self += other · weight`.
    pub fn add_scaled(&mut self, other: &Self, weight: f64) -> Result<()> {
        if other.dim != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += b * weight;
        }
        Ok(())
    }

    /// Returns `G ρ G†`.
    pub fn apply_unitary(&self, g: &SparseGate) -> Result<Self> {
        let m = g.matrix();
        if m.rows() != self.dim || m.cols() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: m.rows(),
            });
        }
        let d = self.dim;
        let zero = C64::new(0.0, 0.0);

        // left = G ρ
        let mut left = vec![zero; d * d];
        for r in 0..d {
            let out = &mut left[r * d..(r + 1) * d];
            let (cols, vals) = m.row(r);
            for (&k, &gv) in cols.iter().zip(vals) {
                let src = &self.data[k * d..(k + 1) * d];
                if gv == C64::new(1.0, 0.0) {
                    out.iter_mut().zip(src).for_each(|(o, s)| *o += s);
                } else {
                    out.iter_mut().zip(src).for_each(|(o, s)| *o += gv * s);
                }
            }
        }

        // result = left G†, scattered row by row through the rows of G†
        let adj = m.adjoint();
        let mut data = vec![zero; d * d];
        for i in 0..d {
            let src = &left[i * d..(i + 1) * d];
            let out = &mut data[i * d..(i + 1) * d];
            for (k, &lv) in src.iter().enumerate() {
                if lv == zero {
                    continue;
                }
                let (cols, vals) = adj.row(k);
                for (&j, &gv) in cols.iter().zip(vals) {
                    out[j] += lv * gv;
                }
            }
        }
        Ok(Self {
            n: self.n,
            dim: d,
            data,
        })
    }
}
