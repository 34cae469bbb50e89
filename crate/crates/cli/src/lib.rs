//! Experiment runners and benchmarks for the `qdm` command.

pub mod bench;
pub mod decay;
pub mod error;
pub mod multiplier;
pub mod report;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::bench::{GateBenchConfig, SwapBenchConfig};
use crate::decay::{DecayConfig, Dist, Family};
use crate::error::{CliError, CliResult};
use crate::multiplier::NoisyConfig;
use crate::report::{Format, Report};

#[derive(Debug, Parser)]
#[command(
    name = "qdm",
    version,
    about = "Density-matrix gate benchmarks and noisy circuit experiments"
)]
pub struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    /// Worker threads for Monte-Carlo commands (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Time the two single-qubit gate constructions.
    BenchGates(BenchGatesArgs),
    /// Time CNOTs applied by swaps against conjugation by the gate matrix.
    BenchSwap(BenchSwapArgs),
    /// Track the decay of |0..0><0..0| under repeated noisy Hadamards.
    HadamardDecay(DecayArgs),
    /// Two-bit multiplier circuits.
    #[command(subcommand)]
    Multiplier(MultiplierCommand),
}

#[derive(Debug, Args)]
pub struct OutArg {
    /// Report file (stdout when omitted).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BenchGatesArgs {
    #[arg(long, default_value_t = 8)]
    pub min_n: usize,
    #[arg(long, default_value_t = 14)]
    pub max_n: usize,
    #[arg(long, default_value_t = 50)]
    pub reps: usize,
    /// Permit registers above 26 qubits.
    #[arg(long)]
    pub allow_large: bool,
    #[command(flatten)]
    pub out: OutArg,
}

#[derive(Debug, Args)]
pub struct BenchSwapArgs {
    #[arg(long, default_value_t = 10)]
    pub n: usize,
    #[arg(long, default_value_t = 1000)]
    pub ops: usize,
    #[arg(long, default_value_t = 2)]
    pub control: usize,
    #[arg(long, default_value_t = 7)]
    pub target: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[command(flatten)]
    pub out: OutArg,
}

#[derive(Debug, Args)]
pub struct DecayArgs {
    #[arg(long, default_value_t = 10_000)]
    pub trials: usize,
    /// Hadamard applications (even).
    #[arg(long, default_value_t = 40)]
    pub apps: usize,
    /// Variance of the angle noise.
    #[arg(long, default_value_t = 0.1)]
    pub variance: f64,
    #[arg(long, value_enum, default_value_t = Dist::Both)]
    pub dist: Dist,
    /// Register size.
    #[arg(long, default_value_t = 3)]
    pub n: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Significance level for the reported power.
    #[arg(long, default_value_t = 0.05)]
    pub alpha: f64,
    #[command(flatten)]
    pub out: OutArg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum NoiseDist {
    Gaussian,
    Lognormal,
}

#[derive(Debug, Subcommand)]
pub enum MultiplierCommand {
    /// Enumerate multiplier circuits up to a gate budget.
    Search {
        #[arg(long, default_value_t = 6)]
        max_gates: usize,
        /// Keep circuits that differ only by reordering disjoint gates.
        #[arg(long)]
        no_dedup: bool,
        /// Directory for `circuit_NNN.txt` files.
        #[arg(long)]
        out_dir: Option<PathBuf>,
        #[command(flatten)]
        out: OutArg,
    },
    /// Check circuit files against the multiplier truth table.
    Verify {
        #[arg(long = "circuit", required = true)]
        circuits: Vec<PathBuf>,
        #[command(flatten)]
        out: OutArg,
    },
    /// Average noisy runs of circuit files.
    Noisy {
        #[arg(long = "circuit", required = true)]
        circuits: Vec<PathBuf>,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 0.1)]
        variance: f64,
        #[arg(long, value_enum, default_value_t = NoiseDist::Gaussian)]
        dist: NoiseDist,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// 1-based input basis state.
        #[arg(long, default_value_t = qdm_core::multiplier::MULTIPLIER_INPUT)]
        input: usize,
        #[command(flatten)]
        out: OutArg,
    },
}

fn emit(report: &Report, format: Format, out: &OutArg) -> CliResult<()> {
    report
        .emit(format, out.out.as_deref())
        .map_err(|source| CliError::Io {
            path: out
                .out
                .as_ref()
                .map(|p| p.display().to_string())
                .unwrap_or_else(|| "<stdout>".into()),
            source,
        })
}

/// Executes a parsed command line.
pub fn run(cli: Cli) -> CliResult<()> {
    if let Some(threads) = cli.threads {
        if threads == 0 {
            return Err(CliError::Usage("threads must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| CliError::Usage(e.to_string()))?;
    }
    let format = cli.format;
    match cli.command {
        Command::BenchGates(a) => {
            let cfg = GateBenchConfig {
                min_n: a.min_n,
                max_n: a.max_n,
                reps: a.reps,
                allow_large: a.allow_large,
            };
            emit(&bench::bench_gates(&cfg)?, format, &a.out)
        }
        Command::BenchSwap(a) => {
            let cfg = SwapBenchConfig {
                n: a.n,
                ops: a.ops,
                control: a.control,
                target: a.target,
                seed: a.seed,
            };
            emit(&bench::bench_swap(&cfg)?.report, format, &a.out)
        }
        Command::HadamardDecay(a) => {
            let cfg = DecayConfig {
                trials: a.trials,
                apps: a.apps,
                variance: a.variance,
                dist: a.dist,
                n: a.n,
                seed: a.seed,
                alpha: a.alpha,
            };
            emit(&decay::hadamard_decay(&cfg)?, format, &a.out)
        }
        Command::Multiplier(MultiplierCommand::Search {
            max_gates,
            no_dedup,
            out_dir,
            out,
        }) => emit(
            &multiplier::search(max_gates, !no_dedup, out_dir.as_deref())?,
            format,
            &out,
        ),
        Command::Multiplier(MultiplierCommand::Verify { circuits, out }) => {
            let (report, valid) = multiplier::verify(&circuits)?;
            emit(&report, format, &out)?;
            if valid {
                Ok(())
            } else {
                Err(CliError::Verification(
                    "at least one circuit is not a multiplier".into(),
                ))
            }
        }
        Command::Multiplier(MultiplierCommand::Noisy {
            circuits,
            samples,
            variance,
            dist,
            seed,
            input,
            out,
        }) => {
            let cfg = NoisyConfig {
                circuits,
                samples,
                variance,
                family: match dist {
                    NoiseDist::Gaussian => Family::Gaussian,
                    NoiseDist::Lognormal => Family::Lognormal,
                },
                seed,
                input,
            };
            emit(&multiplier::noisy(&cfg)?, format, &out)
        }
    }
}
