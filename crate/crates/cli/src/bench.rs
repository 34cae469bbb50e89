//! Benchmark harness for gate construction and swap-versus-multiply CNOTs.
//!
//! Only the construction or application call itself is timed, with a
//! monotonic clock, and times are summed over repetitions. Timed sections
//! run on the calling thread.

use std::collections::BTreeSet;
use std::hint::black_box;
use std::time::{Duration, Instant};

use qdm_core::gatebuild::{build_controlled, build_gate_block, build_gate_kron};
use qdm_core::permgate::{apply_swaps_in_place, cnot_pairs};
use qdm_core::{DensityMatrix, SingleQubitOp, SparseGate, C64};
use rand::Rng;

use crate::error::{CliError, CliResult};
use crate::report::{Cell, Report, Table};

/// Largest register accepted without an explicit override.
pub const MAX_QUBITS_UNGUARDED: usize = 26;

pub const BENCH_COLUMNS: [&str; 6] = ["n", "target", "algorithm", "reps", "seconds", "nnz"];

#[derive(Debug, Clone)]
pub struct GateBenchConfig {
    pub min_n: usize,
    pub max_n: usize,
    pub reps: usize,
    pub allow_large: bool,
}

impl Default for GateBenchConfig {
    fn default() -> Self {
        Self {
            min_n: 8,
            max_n: 14,
            reps: 50,
            allow_large: false,
        }
    }
}

/// Target columns `{1, 5, n/2, n−5, n}` clamped into `[1, n]`, ascending,
/// without duplicates.
pub fn bench_targets(n: usize) -> Vec<usize> {
    let wanted = [1, 5, n / 2, n.saturating_sub(5), n];
    let set: BTreeSet<usize> = wanted.into_iter().map(|t| t.clamp(1, n)).collect();
    set.into_iter().collect()
}

type Builder = fn(&SingleQubitOp, usize, usize) -> qdm_core::Result<SparseGate>;

fn time_builder(
    build: Builder,
    u: &SingleQubitOp,
    n: usize,
    target: usize,
    reps: usize,
) -> CliResult<Duration> {
    let mut total = Duration::ZERO;
    for _ in 0..reps {
        let start = Instant::now();
        let g = build(u, n, target)?;
        total += start.elapsed();
        black_box(g);
    }
    Ok(total)
}

/// Times both single-qubit gate constructions for every `n` in range and
/// every benchmark target, after checking they build the same matrix.
pub fn bench_gates(cfg: &GateBenchConfig) -> CliResult<Report> {
    if cfg.min_n == 0 || cfg.min_n > cfg.max_n {
        return Err(CliError::Usage(format!(
            "invalid qubit range {}..={}",
            cfg.min_n, cfg.max_n
        )));
    }
    if cfg.reps == 0 {
        return Err(CliError::Usage("reps must be at least 1".into()));
    }
    if cfg.max_n > MAX_QUBITS_UNGUARDED && !cfg.allow_large {
        return Err(CliError::Resource(format!(
            "n = {} exceeds {MAX_QUBITS_UNGUARDED} qubits; pass --allow-large to override",
            cfg.max_n
        )));
    }

    let u = SingleQubitOp::hadamard();
    let algorithms: [(&str, Builder); 2] = [("kron", build_gate_kron), ("block", build_gate_block)];
    let mut rows = Table::new("bench", &BENCH_COLUMNS);
    let mut orderings = Table::new(
        "ordering",
        &["n", "algorithm", "fastest_target", "slowest_target"],
    );

    for n in cfg.min_n..=cfg.max_n {
        let targets = bench_targets(n);
        let mut per_alg: Vec<Vec<(usize, Duration)>> = vec![Vec::new(); algorithms.len()];
        for &target in &targets {
            let a = build_gate_kron(&u, n, target)?;
            let b = build_gate_block(&u, n, target)?;
            if a != b {
                return Err(CliError::Verification(format!(
                    "kron and block constructions differ for n = {n}, target = {target}"
                )));
            }
            let nnz = a.nnz();
            drop((a, b));
            for (k, &(name, build)) in algorithms.iter().enumerate() {
                let t = time_builder(build, &u, n, target, cfg.reps)?;
                per_alg[k].push((target, t));
                rows.push(vec![
                    Cell::from(n),
                    Cell::from(target),
                    Cell::from(name),
                    Cell::from(cfg.reps),
                    Cell::from(t.as_secs_f64()),
                    Cell::from(nnz),
                ]);
            }
        }
        for (k, &(name, _)) in algorithms.iter().enumerate() {
            let fastest = per_alg[k]
                .iter()
                .min_by_key(|(_, t)| *t)
                .expect("targets nonempty")
                .0;
            let slowest = per_alg[k]
                .iter()
                .max_by_key(|(_, t)| *t)
                .expect("targets nonempty")
                .0;
            orderings.push(vec![
                Cell::from(n),
                Cell::from(name),
                Cell::from(fastest),
                Cell::from(slowest),
            ]);
        }
    }

    let mut report = Report::new("bench-gates");
    report.tables.push(rows);
    report.tables.push(orderings);
    Ok(report)
}

#[derive(Debug, Clone)]
pub struct SwapBenchConfig {
    pub n: usize,
    pub ops: usize,
    pub control: usize,
    pub target: usize,
    pub seed: u64,
}

impl Default for SwapBenchConfig {
    fn default() -> Self {
        Self {
            n: 10,
            ops: 1000,
            control: 2,
            target: 7,
            seed: 1,
        }
    }
}

/// Matrix with entries uniform on (0, 1).
pub fn random_uniform_matrix(n: usize, seed: u64) -> DensityMatrix {
    let mut rng = qdm_core::noise::SeedStream::new(seed)
        .derive("bench-swap")
        .substream(0);
    let dim = 1usize << n;
    let data = (0..dim * dim)
        .map(|_| C64::new(rng.random::<f64>(), 0.0))
        .collect();
    DensityMatrix::from_raw(n, data).expect("square shape")
}

/// Outcome of [`bench_swap`]: the report plus both final matrices.
pub struct SwapBenchRun {
    pub report: Report,
    pub swapped: DensityMatrix,
    pub multiplied: DensityMatrix,
}

/// Applies `ops` CNOTs to the same random matrix by row/column swaps and by
/// conjugation with the gate matrix, and checks both end in the same matrix.
pub fn bench_swap(cfg: &SwapBenchConfig) -> CliResult<SwapBenchRun> {
    if cfg.n < 2 {
        return Err(CliError::Usage("bench-swap needs at least 2 qubits".into()));
    }
    if cfg.n > MAX_QUBITS_UNGUARDED {
        return Err(CliError::Resource(format!(
            "n = {} exceeds {MAX_QUBITS_UNGUARDED} qubits",
            cfg.n
        )));
    }
    // validates control/target
    let pairs = cnot_pairs(cfg.n, cfg.control, cfg.target)?;
    let controls = BTreeSet::from([cfg.control]);
    let not = SingleQubitOp::not();
    let start_matrix = random_uniform_matrix(cfg.n, cfg.seed);

    let mut swapped = start_matrix.clone();
    let mut swap_time = Duration::ZERO;
    for _ in 0..cfg.ops {
        let t0 = Instant::now();
        let p = cnot_pairs(cfg.n, cfg.control, cfg.target)?;
        apply_swaps_in_place(&mut swapped, &p)?;
        swap_time += t0.elapsed();
    }

    let mut multiplied = start_matrix;
    let mut mult_time = Duration::ZERO;
    let mut nnz = 0;
    for _ in 0..cfg.ops {
        let t0 = Instant::now();
        let g = build_controlled(&not, cfg.n, &controls, cfg.target)?;
        multiplied = multiplied.apply_unitary(&g)?;
        mult_time += t0.elapsed();
        nnz = g.nnz();
    }
    if cfg.ops == 0 {
        nnz = build_controlled(&not, cfg.n, &controls, cfg.target)?.nnz();
    }

    if swapped != multiplied {
        return Err(CliError::Verification(
            "swap and multiply paths produced different matrices".into(),
        ));
    }

    let mut table = Table::new("bench", &BENCH_COLUMNS);
    for (name, t) in [("swap", swap_time), ("multiply", mult_time)] {
        table.push(vec![
            Cell::from(cfg.n),
            Cell::from(cfg.target),
            Cell::from(name),
            Cell::from(cfg.ops),
            Cell::from(t.as_secs_f64()),
            Cell::from(nnz),
        ]);
    }
    let mut info = Table::new(
        "setup",
        &["n", "control", "target", "ops", "swap_pairs", "identical"],
    );
    info.push(vec![
        Cell::from(cfg.n),
        Cell::from(cfg.control),
        Cell::from(cfg.target),
        Cell::from(cfg.ops),
        Cell::from(pairs.len()),
        Cell::from(true),
    ]);
    let mut report = Report::new("bench-swap");
    report.tables.push(table);
    report.tables.push(info);
    Ok(SwapBenchRun {
        report,
        swapped,
        multiplied,
    })
}
