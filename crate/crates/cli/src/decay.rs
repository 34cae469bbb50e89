//! Hadamard-transform degradation experiment.

use qdm_core::analysis::ztest_one_sided;
use qdm_core::noise::{run_hadamard_decay, DecayRun, NoiseSpec, SeedStream};

use crate::error::{CliError, CliResult};
use crate::report::{Cell, Report, Table};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Dist {
    Gaussian,
    Lognormal,
    Both,
}

/// Noise family selected for one run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Gaussian,
    Lognormal,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Gaussian => "gaussian",
            Family::Lognormal => "lognormal",
        }
    }

    /// Zero-mean noise with the given variance.
    pub fn spec(self, variance: f64) -> CliResult<NoiseSpec> {
        let spec = match self {
            Family::Gaussian => NoiseSpec::gaussian_variance(variance),
            Family::Lognormal => NoiseSpec::lognormal_variance(variance),
        };
        spec.map_err(|e| CliError::Usage(e.to_string()))
    }
}

impl Dist {
    pub fn families(self) -> Vec<Family> {
        match self {
            Dist::Gaussian => vec![Family::Gaussian],
            Dist::Lognormal => vec![Family::Lognormal],
            Dist::Both => vec![Family::Gaussian, Family::Lognormal],
        }
    }
}

#[derive(Debug, Clone)]
pub struct DecayConfig {
    pub trials: usize,
    pub apps: usize,
    pub variance: f64,
    pub dist: Dist,
    pub n: usize,
    pub seed: u64,
    pub alpha: f64,
}

impl Default for DecayConfig {
    fn default() -> Self {
        Self {
            trials: 10_000,
            apps: 40,
            variance: 0.1,
            dist: Dist::Both,
            n: 3,
            seed: 1,
            alpha: 0.05,
        }
    }
}

/// Minimum trials per family for the z test to be reported.
pub const ZTEST_MIN_TRIALS: usize = 30;

/// Runs every requested family; each family draws from its own labelled
/// stream of the seed.
pub fn run_families(cfg: &DecayConfig) -> CliResult<Vec<(Family, DecayRun)>> {
    if cfg.trials == 0 {
        return Err(CliError::Usage("trials must be at least 1".into()));
    }
    if cfg.apps == 0 || !cfg.apps.is_multiple_of(2) {
        return Err(CliError::Usage(format!(
            "apps must be a positive even count, got {}",
            cfg.apps
        )));
    }
    if cfg.n == 0 || cfg.n > 12 {
        return Err(CliError::Usage(format!(
            "n must lie in 1..=12, got {}",
            cfg.n
        )));
    }
    if !(cfg.alpha > 0.0 && cfg.alpha < 1.0) {
        return Err(CliError::Usage(format!(
            "alpha must lie in (0, 1), got {}",
            cfg.alpha
        )));
    }
    let root = SeedStream::new(cfg.seed);
    cfg.dist
        .families()
        .into_iter()
        .map(|f| {
            let spec = f.spec(cfg.variance)?;
            let run =
                run_hadamard_decay(cfg.n, cfg.apps, cfg.trials, &spec, &root.derive(f.name()))?;
            Ok((f, run))
        })
        .collect()
}

pub fn hadamard_decay(cfg: &DecayConfig) -> CliResult<Report> {
    let runs = run_families(cfg)?;
    let mut decay = Table::new("decay", &["dist", "step", "mean_real", "mean_imag_max"]);
    for (f, run) in &runs {
        for k in 0..run.steps.len() {
            decay.push(vec![
                Cell::from(f.name()),
                Cell::from(run.steps[k]),
                Cell::from(run.mean_real[k]),
                Cell::from(run.max_abs_imag[k]),
            ]);
        }
    }
    let mut report = Report::new("hadamard-decay");
    report.tables.push(decay);

    if let [(Family::Gaussian, g), (Family::Lognormal, l)] = runs.as_slice() {
        if cfg.trials >= ZTEST_MIN_TRIALS {
            // H0: equal means, H1: gaussian mean below lognormal mean
            let mut z = Table::new("ztest", &["step", "statistic", "p_value", "power", "alpha"]);
            for k in 0..g.steps.len() {
                let r = ztest_one_sided(&g.step_samples(k), &l.step_samples(k), cfg.alpha)?;
                z.push(vec![
                    Cell::from(g.steps[k]),
                    Cell::from(r.statistic),
                    Cell::from(r.p_value),
                    Cell::from(r.power.unwrap_or(f64::NAN)),
                    Cell::from(cfg.alpha),
                ]);
            }
            report.tables.push(z);
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(trials: usize) -> DecayConfig {
        DecayConfig {
            trials,
            apps: 4,
            n: 2,
            ..Default::default()
        }
    }

    #[test]
    fn tables_and_shapes() {
        let r = hadamard_decay(&small(40)).unwrap();
        assert_eq!(r.tables[0].rows.len(), 4);
        assert_eq!(r.table("ztest").unwrap().rows.len(), 2);
        let single = hadamard_decay(&small(1)).unwrap();
        assert_eq!(single.tables.len(), 1);
        let one = hadamard_decay(&DecayConfig {
            dist: Dist::Gaussian,
            ..small(40)
        })
        .unwrap();
        assert!(one.table("ztest").is_none());
    }

    #[test]
    fn invalid_configs() {
        assert!(hadamard_decay(&small(0)).is_err());
        assert!(hadamard_decay(&DecayConfig {
            apps: 3,
            ..small(5)
        })
        .is_err());
        assert!(hadamard_decay(&DecayConfig {
            variance: -1.0,
            ..small(5)
        })
        .is_err());
    }
}
