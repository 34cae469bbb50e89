//! CNOT, Toffoli and Fredkin gates as row/column swaps.
//!
//! Each gate is a permutation of basis states made of disjoint
//! transpositions. The transpositions are listed as 1-based `(a, b)` pairs
//! with `a < b`, sorted by `a`, and applied to a density matrix by exchanging
//! rows `a, b` and columns `a, b`; no arithmetic is performed.

use crate::register::{check_qubit, qubit_mask, DensityMatrix};
use crate::{Error, Result};

/// Disjoint transpositions of basis indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SwapPairList {
    n: usize,
    pairs: Vec<(usize, usize)>,
}

impl SwapPairList {
    /// Validates and normalises a list of 1-based pairs.
    pub fn new(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let dim = 1usize << n;
        let mut seen = vec![false; dim + 1];
        let mut out = Vec::new();
        for (a, b) in pairs {
            let (a, b) = if a < b { (a, b) } else { (b, a) };
            for idx in [a, b] {
                if idx == 0 || idx > dim {
                    return Err(Error::IndexOutOfRange {
                        index: idx,
                        max: dim,
                    });
                }
                if seen[idx] {
                    return Err(Error::InvalidArgument(format!(
                        "index {idx} appears in more than one pair"
                    )));
                }
                seen[idx] = true;
            }
            out.push((a, b));
        }
        out.sort_unstable();
        Ok(Self { n, pairs: out })
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Image of a 1-based basis index under the permutation.
    pub fn image(&self, idx: usize) -> usize {
        for &(a, b) in &self.pairs {
            if a == idx {
                return b;
            }
            if b == idx {
                return a;
            }
        }
        idx
    }
}

fn check_distinct(n: usize, qubits: &[usize]) -> Result<()> {
    for (i, &q) in qubits.iter().enumerate() {
        check_qubit(q, n)?;
        if qubits[..i].contains(&q) {
            return Err(Error::OverlappingQubits(q));
        }
    }
    Ok(())
}

/// All 0-based offsets with the `fixed` bits set to the given values, in
/// increasing order.
fn offsets_with(n: usize, fixed: &[(usize, bool)]) -> Vec<usize> {
    let fixed_mask: usize = fixed.iter().map(|&(q, _)| qubit_mask(q, n)).sum();
    let fixed_bits: usize = fixed
        .iter()
        .filter(|&&(_, v)| v)
        .map(|&(q, _)| qubit_mask(q, n))
        .sum();
    let free: Vec<usize> = (0..n)
        .map(|s| 1usize << s)
        .filter(|m| m & fixed_mask == 0)
        .collect();
    (0..(1usize << free.len()))
        .map(|v| {
            free.iter()
                .enumerate()
                .filter(|&(i, _)| (v >> i) & 1 == 1)
                .fold(fixed_bits, |acc, (_, &m)| acc | m)
        })
        .collect()
}

/// Swap pairs of a CNOT with the given control and target.
pub fn cnot_pairs(n: usize, control: usize, target: usize) -> Result<SwapPairList> {
    check_distinct(n, &[control, target])?;
    let t = qubit_mask(target, n);
    let pairs = offsets_with(n, &[(control, true), (target, false)])
        .into_iter()
        .map(|o| (o + 1, (o | t) + 1));
    SwapPairList::new(n, pairs)
}

/// Swap pairs of a Toffoli gate.
pub fn toffoli_pairs(
    n: usize,
    control1: usize,
    control2: usize,
    target: usize,
) -> Result<SwapPairList> {
    check_distinct(n, &[control1, control2, target])?;
    let t = qubit_mask(target, n);
    let pairs = offsets_with(n, &[(control1, true), (control2, true), (target, false)])
        .into_iter()
        .map(|o| (o + 1, (o | t) + 1));
    SwapPairList::new(n, pairs)
}

/// Swap pairs of a Fredkin (controlled swap) gate: tuples with the control
/// bit set whose two target bits differ are exchanged with their partner
/// that has both target bits flipped.
pub fn fredkin_pairs(
    n: usize,
    control: usize,
    target1: usize,
    target2: usize,
) -> Result<SwapPairList> {
    check_distinct(n, &[control, target1, target2])?;
    let both = qubit_mask(target1, n) | qubit_mask(target2, n);
    let pairs = offsets_with(n, &[(control, true), (target1, false), (target2, true)])
        .into_iter()
        .map(|o| (o + 1, (o ^ both) + 1));
    SwapPairList::new(n, pairs)
}

/// Exchanges rows and columns of `rho` in place for every pair of `s`.
pub fn apply_swaps_in_place(rho: &mut DensityMatrix, s: &SwapPairList) -> Result<()> {
    if rho.num_qubits() != s.n {
        return Err(Error::DimensionMismatch {
            expected: 1 << s.n,
            found: rho.dim(),
        });
    }
    let d = rho.dim();
    let data = rho.data_mut();
    for &(a, b) in &s.pairs {
        let (a, b) = (a - 1, b - 1);
        // a < b so the two rows never overlap
        let (head, tail) = data.split_at_mut(b * d);
        head[a * d..(a + 1) * d].swap_with_slice(&mut tail[..d]);
    }
    for row in data.chunks_exact_mut(d) {
        for &(a, b) in &s.pairs {
            row.swap(a - 1, b - 1);
        }
    }
    Ok(())
}

/// Returns `P ρ P†` for the permutation described by `s`.
pub fn apply_swaps(rho: &DensityMatrix, s: &SwapPairList) -> Result<DensityMatrix> {
    let mut out = rho.clone();
    apply_swaps_in_place(&mut out, s)?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::register::{index_to_tuple, tuple_to_index, BasisTuple};
    use crate::C64;

    /// Literal reading of the pairing rules: enumerate every pair of tuples
    /// and keep those meeting the control/target/other-bit conditions.
    fn brute_pairs(n: usize, controls: &[usize], targets: &[usize]) -> Vec<(usize, usize)> {
        let tuples: Vec<BasisTuple> = (1..=(1 << n))
            .map(|i| index_to_tuple(i, n).unwrap())
            .collect();
        let mut out = Vec::new();
        for a in &tuples {
            for b in &tuples {
                let (ia, ib) = (tuple_to_index(a), tuple_to_index(b));
                if ia >= ib {
                    continue;
                }
                let controls_set = controls.iter().all(|&c| a.bit(c) == 1 && b.bit(c) == 1);
                let targets_differ = targets.iter().all(|&t| a.bit(t) != b.bit(t));
                let others_same = (1..=n)
                    .filter(|q| !controls.contains(q) && !targets.contains(q))
                    .all(|q| a.bit(q) == b.bit(q));
                let within_tuple = targets.len() < 2 || a.bit(targets[0]) != a.bit(targets[1]);
                if controls_set && targets_differ && others_same && within_tuple {
                    out.push((ia, ib));
                }
            }
        }
        out
    }

    #[test]
    fn cnot_examples() {
        assert_eq!(
            cnot_pairs(4, 1, 2).unwrap().pairs(),
            &[(9, 13), (10, 14), (11, 15), (12, 16)]
        );
        assert_eq!(cnot_pairs(2, 1, 2).unwrap().pairs(), &[(3, 4)]);
        assert_eq!(cnot_pairs(2, 2, 1).unwrap().pairs(), &[(2, 4)]);
        assert_eq!(brute_pairs(2, &[1], &[2]), vec![(3, 4)]);
        assert_eq!(brute_pairs(2, &[2], &[1]), vec![(2, 4)]);
    }

    #[test]
    fn toffoli_examples() {
        assert_eq!(
            toffoli_pairs(4, 2, 3, 4).unwrap().pairs(),
            &[(7, 8), (15, 16)]
        );
        assert_eq!(toffoli_pairs(3, 1, 2, 3).unwrap().pairs(), &[(7, 8)]);
        assert_eq!(toffoli_pairs(3, 2, 3, 1).unwrap().pairs(), &[(4, 8)]);
        assert_eq!(brute_pairs(3, &[1, 2], &[3]), vec![(7, 8)]);
        assert_eq!(brute_pairs(3, &[2, 3], &[1]), vec![(4, 8)]);
    }

    #[test]
    fn fredkin_examples() {
        assert_eq!(
            fredkin_pairs(4, 3, 1, 4).unwrap().pairs(),
            &[(4, 11), (8, 15)]
        );
        assert_eq!(fredkin_pairs(3, 1, 2, 3).unwrap().pairs(), &[(6, 7)]);
        assert_eq!(fredkin_pairs(3, 3, 1, 2).unwrap().pairs(), &[(4, 6)]);
        assert_eq!(brute_pairs(3, &[1], &[2, 3]), vec![(6, 7)]);
        assert_eq!(brute_pairs(3, &[3], &[1, 2]), vec![(4, 6)]);
    }

    #[test]
    fn invalid_indices() {
        assert!(matches!(
            cnot_pairs(3, 2, 2),
            Err(Error::OverlappingQubits(2))
        ));
        assert!(matches!(
            cnot_pairs(3, 4, 1),
            Err(Error::QubitOutOfRange { .. })
        ));
        assert!(toffoli_pairs(3, 1, 1, 2).is_err());
        assert!(fredkin_pairs(3, 1, 2, 2).is_err());
        assert!(SwapPairList::new(2, [(1, 2), (2, 3)]).is_err());
        assert!(SwapPairList::new(2, [(1, 5)]).is_err());
    }

    #[test]
    fn brute_force_oracle_small_registers() {
        for n in 2..=6 {
            for c in 1..=n {
                for t in (1..=n).filter(|&t| t != c) {
                    assert_eq!(
                        cnot_pairs(n, c, t).unwrap().pairs(),
                        brute_pairs(n, &[c], &[t]).as_slice()
                    );
                }
            }
        }
        for n in 3..=5 {
            for a in 1..=n {
                for b in 1..=n {
                    for c in 1..=n {
                        if a == b || b == c || a == c {
                            continue;
                        }
                        assert_eq!(
                            toffoli_pairs(n, a, b, c).unwrap().pairs(),
                            brute_pairs(n, &[a, b], &[c]).as_slice()
                        );
                        assert_eq!(
                            fredkin_pairs(n, a, b, c).unwrap().pairs(),
                            brute_pairs(n, &[a], &[b, c]).as_slice()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn apply_examples() {
        let s = cnot_pairs(4, 1, 2).unwrap();
        let rho = DensityMatrix::pure_state(9, 4).unwrap();
        assert_eq!(
            apply_swaps(&rho, &s).unwrap(),
            DensityMatrix::pure_state(13, 4).unwrap()
        );
        let rho = DensityMatrix::pure_state(1, 4).unwrap();
        assert_eq!(apply_swaps(&rho, &s).unwrap(), rho);

        let data: Vec<C64> = (0..256)
            .map(|i| C64::new(i as f64, -(i as f64) / 3.0))
            .collect();
        let rho = DensityMatrix::from_raw(4, data).unwrap();
        let once = apply_swaps(&rho, &s).unwrap();
        assert_ne!(once, rho);
        assert_eq!(apply_swaps(&once, &s).unwrap(), rho);
        // entry (9,10) moves to (13,14)
        assert_eq!(once.entry(13, 14), rho.entry(9, 10));

        assert!(apply_swaps(&DensityMatrix::pure_state(1, 3).unwrap(), &s).is_err());
    }
}
