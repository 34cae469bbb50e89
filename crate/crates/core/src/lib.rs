//! Density-matrix simulation of small quantum registers.
//!
//! The crate is organised around a dense [`DensityMatrix`] and sparse gate
//! matrices ([`SparseGate`]). Gates can be built from a 2×2 operation either
//! by Kronecker products or by block concatenation, and the permutation gates
//! (CNOT, Toffoli, Fredkin) can alternatively be applied by swapping rows and
//! columns in place. On top of that sit the angle-noise model, the 2-bit
//! multiplier workbench and the comparison metrics/statistics.
//!
//! Basis indices exposed by this crate are 1-based, qubit 1 is the most
//! significant bit of a basis index.

pub mod analysis;
mod error;
pub mod gatebuild;
pub mod multiplier;
pub mod noise;
pub mod permgate;
pub mod register;
pub mod sparse;

pub use error::{Error, Result};
pub use gatebuild::{SingleQubitOp, SparseGate};
pub use register::{BasisTuple, DensityMatrix};

/// Complex scalar used throughout.
pub type C64 = num_complex::Complex64;
