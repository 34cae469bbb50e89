//! Monte-Carlo evaluation of a multiplier circuit under angle noise.
//!
//! Every gate is a controlled NOT whose NOT is synthesised from noisy
//! rotation and phase angles; controls are exact. Each sample draws fresh
//! angles for every gate, conjugates the register state through the circuit
//! and the outputs are averaged.

use rayon::prelude::*;

use super::{simulate_classical, verify_multiplier, Circuit, REGISTER_QUBITS};
use crate::analysis::{metric_report, MetricReport};
use crate::gatebuild::build_controlled;
use crate::noise::{noisy_gate, NoiseSpec, SeedStream, NOT_ANGLES};
use crate::register::{check_index, DensityMatrix};
use crate::{Error, Result};

/// Input `|X=1, Y=1, Z=1, W=0, 0000⟩` (3 × 1).
pub const MULTIPLIER_INPUT: usize = 225;
/// Basis states where the output of that input can have weight.
pub const OUTPUT_SUPPORT: [usize; 4] = [225, 229, 233, 237];

/// Samples are summed in fixed chunks so the average is independent of the
/// thread count.
const CHUNK: usize = 64;
/// Chunks evaluated concurrently before being folded into the total.
const BATCH: usize = 16;

#[derive(Debug, Clone)]
pub struct NoisyRun {
    pub samples: usize,
    pub input: usize,
    /// Index of the noiseless output.
    pub expected: usize,
    /// Averaged output state.
    pub mean: DensityMatrix,
    /// Diagonal indices carrying weight (> 1e-12) in the average, plus the
    /// expected output, ascending.
    pub support: Vec<usize>,
    pub report: MetricReport,
    /// The expected-output diagonal entry of every individual sample.
    pub expected_entry_samples: Vec<f64>,
}

fn run_sample(
    c: &Circuit,
    spec: &NoiseSpec,
    seeds: &SeedStream,
    index: u64,
    input: usize,
    expected: usize,
) -> Result<(DensityMatrix, f64)> {
    let mut rng = seeds.substream(index);
    let (theta, phi) = NOT_ANGLES;
    let mut rho = DensityMatrix::pure_state(input, REGISTER_QUBITS)?;
    for g in &c.gates {
        let u = noisy_gate(theta, phi, spec, &mut rng);
        let gate = build_controlled(
            &u,
            REGISTER_QUBITS,
            &g.control_positions(),
            g.target().position(),
        )?;
        rho = rho.apply_unitary(&gate)?;
    }
    let diag = rho.entry(expected, expected).re;
    Ok((rho, diag))
}

/// Averages `samples` noisy runs of `c` started from basis state `input`
/// (1-based), sample `k` drawing from substream `k` of `seeds`.
pub fn run_noisy_multiplier(
    c: &Circuit,
    spec: &NoiseSpec,
    samples: usize,
    seeds: &SeedStream,
    input: usize,
) -> Result<NoisyRun> {
    if !verify_multiplier(c) {
        return Err(Error::UnverifiedCircuit);
    }
    if samples == 0 {
        return Err(Error::InvalidArgument("samples must be at least 1".into()));
    }
    check_index(input, REGISTER_QUBITS)?;
    let expected = simulate_classical(c, (input - 1) as u8) as usize + 1;

    let chunks: Vec<(usize, usize)> = (0..samples)
        .step_by(CHUNK)
        .map(|s| (s, (s + CHUNK).min(samples)))
        .collect();
    let mut total = DensityMatrix::zeros(REGISTER_QUBITS);
    let mut diag_samples = Vec::with_capacity(samples);
    for batch in chunks.chunks(BATCH) {
        let sums: Vec<(DensityMatrix, Vec<f64>)> = batch
            .par_iter()
            .map(|&(lo, hi)| -> Result<_> {
                let mut acc = DensityMatrix::zeros(REGISTER_QUBITS);
                let mut diags = Vec::with_capacity(hi - lo);
                for k in lo..hi {
                    let (rho, d) = run_sample(c, spec, seeds, k as u64, input, expected)?;
                    acc.add_scaled(&rho, 1.0)?;
                    diags.push(d);
                }
                Ok((acc, diags))
            })
            .collect::<Result<_>>()?;
        for (acc, diags) in sums {
            total.add_scaled(&acc, 1.0)?;
            diag_samples.extend(diags);
        }
    }
    let mut mean = DensityMatrix::zeros(REGISTER_QUBITS);
    mean.add_scaled(&total, 1.0 / samples as f64)?;

    let mut support: Vec<usize> = (1..=mean.dim())
        .filter(|&i| i == expected || mean.entry(i, i).re > 1e-12)
        .collect();
    support.sort_unstable();
    let target = DensityMatrix::pure_state(expected, REGISTER_QUBITS)?;
    let report = metric_report(&mean, &target, &support)?;
    Ok(NoisyRun {
        samples,
        input,
        expected,
        mean,
        support,
        report,
        expected_entry_samples: diag_samples,
    })
}
