//! 2-bit × 2-bit reversible multiplier on an 8-qubit register.
//!
//! The register is laid out as `|X, Y, Z, W, A0, A1, A2, A3⟩` (positions
//! 1–8). The inputs encode `(2X + Y) · (2W + Z)`, and the product is written
//! to the ancillae with `A0` as the least significant bit.

mod format;
mod noisy;
mod search;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::{Error, Result};

pub use format::{parse_circuit, write_circuit};
pub use noisy::{run_noisy_multiplier, NoisyRun, MULTIPLIER_INPUT, OUTPUT_SUPPORT};
pub use search::{canonicalize, default_pool, search_circuits, SearchOptions};

/// Number of qubits in the multiplier register.
pub const REGISTER_QUBITS: usize = 8;

/// Named qubits of the multiplier register.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Qubit {
    X,
    Y,
    Z,
    W,
    A0,
    A1,
    A2,
    A3,
}

impl Qubit {
    pub const ALL: [Qubit; 8] = [
        Qubit::X,
        Qubit::Y,
        Qubit::Z,
        Qubit::W,
        Qubit::A0,
        Qubit::A1,
        Qubit::A2,
        Qubit::A3,
    ];

    pub const INPUTS: [Qubit; 4] = [Qubit::X, Qubit::Y, Qubit::Z, Qubit::W];
    pub const ANCILLAE: [Qubit; 4] = [Qubit::A0, Qubit::A1, Qubit::A2, Qubit::A3];

    /// 1-based register position.
    pub fn position(self) -> usize {
        self as usize + 1
    }

    pub fn from_position(pos: usize) -> Option<Self> {
        Self::ALL.get(pos.checked_sub(1)?).copied()
    }

    pub fn is_ancilla(self) -> bool {
        self.position() > 4
    }

    /// Bit of this qubit inside an 8-bit register value (qubit 1 = MSB).
    pub fn mask(self) -> u8 {
        1 << (REGISTER_QUBITS - self.position())
    }

    pub fn name(self) -> &'static str {
        match self {
            Qubit::X => "X",
            Qubit::Y => "Y",
            Qubit::Z => "Z",
            Qubit::W => "W",
            Qubit::A0 => "A0",
            Qubit::A1 => "A1",
            Qubit::A2 => "A2",
            Qubit::A3 => "A3",
        }
    }
}

impl fmt::Display for Qubit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Qubit {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|q| q.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidArgument(format!("unknown qubit name '{s}'")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GateKind {
    Cnot,
    Toffoli,
}

/// A CNOT or Toffoli on the multiplier register.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GateSpec {
    kind: GateKind,
    controls: Vec<Qubit>,
    target: Qubit,
}

impl GateSpec {
    pub fn cnot(control: Qubit, target: Qubit) -> Result<Self> {
        if control == target {
            return Err(Error::OverlappingQubits(target.position()));
        }
        Ok(Self {
            kind: GateKind::Cnot,
            controls: vec![control],
            target,
        })
    }

    pub fn toffoli(c1: Qubit, c2: Qubit, target: Qubit) -> Result<Self> {
        for q in [c1, c2] {
            if q == target {
                return Err(Error::OverlappingQubits(q.position()));
            }
        }
        if c1 == c2 {
            return Err(Error::OverlappingQubits(c1.position()));
        }
        let mut controls = vec![c1, c2];
        controls.sort();
        Ok(Self {
            kind: GateKind::Toffoli,
            controls,
            target,
        })
    }

    pub fn kind(&self) -> GateKind {
        self.kind
    }

    /// Control qubits, sorted.
    pub fn controls(&self) -> &[Qubit] {
        &self.controls
    }

    pub fn target(&self) -> Qubit {
        self.target
    }

    /// 1-based control positions, for the gate builders.
    pub fn control_positions(&self) -> BTreeSet<usize> {
        self.controls.iter().map(|q| q.position()).collect()
    }

    fn qubit_mask(&self) -> u8 {
        self.controls
            .iter()
            .fold(self.target.mask(), |m, q| m | q.mask())
    }

    /// True when the two gates share no qubit.
    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.qubit_mask() & other.qubit_mask() == 0
    }

    /// Classical action on an 8-bit register value.
    pub fn apply_bits(&self, bits: u8) -> u8 {
        if self.controls.iter().all(|c| bits & c.mask() != 0) {
            bits ^ self.target.mask()
        } else {
            bits
        }
    }
}

impl fmt::Display for GateSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            GateKind::Cnot => write!(f, "CNOT {} {}", self.controls[0], self.target),
            GateKind::Toffoli => write!(
                f,
                "TOFFOLI {} {} {}",
                self.controls[0], self.controls[1], self.target
            ),
        }
    }
}

/// Ordered gate sequence.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Circuit {
    pub gates: Vec<GateSpec>,
}

impl Circuit {
    pub fn new(gates: Vec<GateSpec>) -> Self {
        Self { gates }
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.gates.iter().map(|g| g.to_string()).collect();
        f.write_str(&parts.join("; "))
    }
}

/// Inputs `(x, y, z, w)` packed as an 8-bit register value with zero ancillae.
pub fn input_bits(x: u8, y: u8, z: u8, w: u8) -> u8 {
    (x << 7) | (y << 6) | (z << 5) | (w << 4)
}

/// One row of the multiplier truth table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TruthRow {
    pub x: u8,
    pub y: u8,
    pub z: u8,
    pub w: u8,
    /// Product bits `(a0, a1, a2, a3)`, `a0` least significant.
    pub product: [u8; 4],
}

impl TruthRow {
    pub fn value(&self) -> u8 {
        (0..4).map(|k| self.product[k] << k).sum()
    }

    /// Register value holding the inputs and the product.
    pub fn output_bits(&self) -> u8 {
        Qubit::ANCILLAE.iter().zip(self.product).fold(
            input_bits(self.x, self.y, self.z, self.w),
            |acc, (q, b)| {
                if b == 1 {
                    acc | q.mask()
                } else {
                    acc
                }
            },
        )
    }
}

/// All 16 rows of `(2x + y) · (2w + z)`, ordered by the input register value.
pub fn multiplier_truth_table() -> Vec<TruthRow> {
    let mut rows = Vec::with_capacity(16);
    for x in 0..2u8 {
        for y in 0..2u8 {
            for z in 0..2u8 {
                for w in 0..2u8 {
                    let p = (2 * x + y) * (2 * w + z);
                    rows.push(TruthRow {
                        x,
                        y,
                        z,
                        w,
                        product: [p & 1, (p >> 1) & 1, (p >> 2) & 1, (p >> 3) & 1],
                    });
                }
            }
        }
    }
    rows
}

/// Applies every gate's classical action in order.
pub fn simulate_classical(c: &Circuit, bits: u8) -> u8 {
    c.gates.iter().fold(bits, |b, g| g.apply_bits(b))
}

/// True iff the circuit maps every input with clear ancillae to itself plus
/// the product in the ancillae.
pub fn verify_multiplier(c: &Circuit) -> bool {
    multiplier_truth_table().iter().all(|row| {
        simulate_classical(c, input_bits(row.x, row.y, row.z, row.w)) == row.output_bits()
    })
}

/// Six-gate reference multiplier: partial products into A0, A1, A2, the
/// carry into A3 and its correction on A2.
pub fn reference_circuit() -> Circuit {
    use Qubit::*;
    let g = |r: Result<GateSpec>| r.expect("valid reference gate");
    Circuit::new(vec![
        g(GateSpec::toffoli(Y, Z, A0)),
        g(GateSpec::toffoli(X, Z, A1)),
        g(GateSpec::toffoli(Y, W, A1)),
        g(GateSpec::toffoli(X, W, A2)),
        g(GateSpec::toffoli(A0, A2, A3)),
        g(GateSpec::cnot(A3, A2)),
    ])
}
