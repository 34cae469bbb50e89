//! Operational errors as random perturbations of gate angles.
//!
//! NOT and Hadamard are synthesised as `rotation(θ) · phase_shift(φ)`
//! (phase first). A noisy gate adds a fresh random offset to each of the two
//! angles, so it stays exactly unitary whatever the draw.
//!
//! Randomness comes from [`SeedStream`]: every trial of an experiment uses its
//! own ChaCha substream, which keeps results identical however the trials are
//! scheduled across threads.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::gatebuild::{build_gate_block, SingleQubitOp};
use crate::register::DensityMatrix;
use crate::{Error, Result, C64};

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

/// Ideal angles `(θ, φ)` of the Hadamard decomposition.
pub const HADAMARD_ANGLES: (f64, f64) = (FRAC_PI_4, PI);
/// Ideal angles `(θ, φ)` of the NOT decomposition.
pub const NOT_ANGLES: (f64, f64) = (FRAC_PI_2, PI);

/// Lognormal scale giving variance 0.1 at `mu = 0` (rounded).
pub const CALIBRATED_LOGNORMAL_SIGMA: f64 = 0.296;
/// Mean of that lognormal, subtracted to centre it at zero.
pub const CALIBRATED_LOGNORMAL_OFFSET: f64 = 1.045;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NoiseFamily {
    Gaussian,
    CenteredLognormal,
}

/// Distribution of a single angle error.
///
/// Gaussian draws are `mu + sigma·z`; lognormal draws are
/// `exp(mu + sigma·z) − offset`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseSpec {
    family: NoiseFamily,
    mu: f64,
    sigma: f64,
    offset: f64,
}

impl NoiseSpec {
    pub fn gaussian(mu: f64, sigma: f64) -> Result<Self> {
        Self::validate(mu, sigma, 0.0)?;
        Ok(Self {
            family: NoiseFamily::Gaussian,
            mu,
            sigma,
            offset: 0.0,
        })
    }

    /// Zero-mean Gaussian with the given variance.
    pub fn gaussian_variance(variance: f64) -> Result<Self> {
        if !(variance > 0.0 && variance.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "variance must be positive, got {variance}"
            )));
        }
        Self::gaussian(0.0, variance.sqrt())
    }

    pub fn centered_lognormal(mu: f64, sigma: f64, offset: f64) -> Result<Self> {
        Self::validate(mu, sigma, offset)?;
        Ok(Self {
            family: NoiseFamily::CenteredLognormal,
            mu,
            sigma,
            offset,
        })
    }

    /// The fixed lognormal configuration: `mu = 0`, `sigma = 0.296`,
    /// shifted down by 1.045.
    pub fn calibrated_lognormal() -> Self {
        Self {
            family: NoiseFamily::CenteredLognormal,
            mu: 0.0,
            sigma: CALIBRATED_LOGNORMAL_SIGMA,
            offset: CALIBRATED_LOGNORMAL_OFFSET,
        }
    }

    /// Lognormal with `mu = 0` whose variance is `variance`, centred exactly
    /// at zero by subtracting its mean.
    pub fn lognormal_variance(variance: f64) -> Result<Self> {
        if !(variance > 0.0 && variance.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "variance must be positive, got {variance}"
            )));
        }
        // var = (e^{s²} − 1) e^{s²}  ⇒  e^{s²} = (1 + √(1 + 4 var)) / 2
        let es2 = (1.0 + (1.0 + 4.0 * variance).sqrt()) / 2.0;
        let sigma = es2.ln().sqrt();
        Self::centered_lognormal(0.0, sigma, es2.sqrt())
    }

    fn validate(mu: f64, sigma: f64, offset: f64) -> Result<()> {
        if !(sigma > 0.0 && sigma.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "sigma must be positive, got {sigma}"
            )));
        }
        if !mu.is_finite() || !offset.is_finite() {
            return Err(Error::InvalidArgument(
                "mu and offset must be finite".into(),
            ));
        }
        Ok(())
    }

    pub fn family(&self) -> NoiseFamily {
        self.family
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    /// Theoretical mean of one draw.
    pub fn mean(&self) -> f64 {
        match self.family {
            NoiseFamily::Gaussian => self.mu,
            NoiseFamily::CenteredLognormal => {
                (self.mu + self.sigma * self.sigma / 2.0).exp() - self.offset
            }
        }
    }

    /// Theoretical variance of one draw.
    pub fn variance(&self) -> f64 {
        let s2 = self.sigma * self.sigma;
        match self.family {
            NoiseFamily::Gaussian => s2,
            NoiseFamily::CenteredLognormal => (s2.exp() - 1.0) * (2.0 * self.mu + s2).exp(),
        }
    }

    /// One angle error.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let z: f64 = rng.sample(StandardNormal);
        match self.family {
            NoiseFamily::Gaussian => self.mu + self.sigma * z,
            NoiseFamily::CenteredLognormal => (self.mu + self.sigma * z).exp() - self.offset,
        }
    }
}

/// Errors added to the rotation and phase angles of one gate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngleSample {
    pub delta_theta: f64,
    pub delta_phi: f64,
}

/// Deterministic source of independent random substreams.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SeedStream {
    seed: u64,
}

impl SeedStream {
    pub fn new(seed: u64) -> Self {
        Self { seed }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// A stream unrelated to `self`, keyed by `label`.
    pub fn derive(&self, label: &str) -> Self {
        // FNV-1a over the label, then a splitmix64 finaliser
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for b in label.bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
        let mut z = self.seed ^ h;
        z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        Self {
            seed: z ^ (z >> 31),
        }
    }

    /// Generator for work item `index`.
    pub fn substream(&self, index: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(index);
        rng
    }
}

/// `[[cos θ, −sin θ], [sin θ, cos θ]]`.
pub fn rotation(theta: f64) -> SingleQubitOp {
    let (s, c) = theta.sin_cos();
    SingleQubitOp::from_real(c, -s, s, c)
}

/// `[[1, 0], [0, e^{iφ}]]`.
pub fn phase_shift(phi: f64) -> SingleQubitOp {
    let zero = C64::new(0.0, 0.0);
    SingleQubitOp::new(C64::new(1.0, 0.0), zero, zero, C64::from_polar(1.0, phi))
}

/// Phase shift by `phi` followed by rotation by `theta`.
pub fn composed_gate(theta: f64, phi: f64) -> SingleQubitOp {
    rotation(theta).mul(&phase_shift(phi))
}

/// Two independent angle errors, rotation first.
pub fn sample_angles<R: Rng + ?Sized>(spec: &NoiseSpec, rng: &mut R) -> AngleSample {
    let delta_theta = spec.sample(rng);
    let delta_phi = spec.sample(rng);
    AngleSample {
        delta_theta,
        delta_phi,
    }
}

/// The ideal gate with freshly perturbed angles.
pub fn noisy_gate<R: Rng + ?Sized>(
    ideal_theta: f64,
    ideal_phi: f64,
    spec: &NoiseSpec,
    rng: &mut R,
) -> SingleQubitOp {
    let d = sample_angles(spec, rng);
    composed_gate(ideal_theta + d.delta_theta, ideal_phi + d.delta_phi)
}

/// Output of [`run_hadamard_decay`].
#[derive(Debug, Clone, PartialEq)]
pub struct DecayRun {
    /// Application counts at which the `(1,1)` entry was recorded: 2, 4, ….
    pub steps: Vec<usize>,
    /// Mean over trials of the real part of the `(1,1)` entry, per step.
    pub mean_real: Vec<f64>,
    /// Largest `|Im ρ₁₁|` seen in any trial, per step.
    pub max_abs_imag: Vec<f64>,
    /// Real part of `(1,1)` for every trial, `per_trial[trial][step]`.
    pub per_trial: Vec<Vec<f64>>,
}

impl DecayRun {
    /// Per-trial values at the given step position (0 = after 2 applications).
    pub fn step_samples(&self, step_pos: usize) -> Vec<f64> {
        self.per_trial.iter().map(|t| t[step_pos]).collect()
    }
}

/// Repeatedly applies a noisy Hadamard to every qubit of `|0…0⟩⟨0…0|` and
/// tracks the `|0…0⟩⟨0…0|` entry after every second application.
///
/// Each application draws fresh angle errors for every qubit. Trial `k` uses
/// substream `k` of `seeds`, so the result does not depend on the number of
/// worker threads.
pub fn run_hadamard_decay(
    n: usize,
    applications: usize,
    trials: usize,
    spec: &NoiseSpec,
    seeds: &SeedStream,
) -> Result<DecayRun> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "register needs at least one qubit".into(),
        ));
    }
    if applications == 0 || !applications.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!(
            "applications must be a positive even count, got {applications}"
        )));
    }
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be at least 1".into()));
    }
    let (theta, phi) = HADAMARD_ANGLES;
    let traces: Vec<Vec<C64>> = (0..trials as u64)
        .into_par_iter()
        .map(|trial| -> Result<Vec<C64>> {
            let mut rng = seeds.substream(trial);
            let mut rho = DensityMatrix::pure_state(1, n)?;
            let mut recorded = Vec::with_capacity(applications / 2);
            for app in 1..=applications {
                for q in 1..=n {
                    let u = noisy_gate(theta, phi, spec, &mut rng);
                    rho = rho.apply_unitary(&build_gate_block(&u, n, q)?)?;
                }
                if app % 2 == 0 {
                    recorded.push(rho.entry(1, 1));
                }
            }
            Ok(recorded)
        })
        .collect::<Result<_>>()?;

    let steps: Vec<usize> = (1..=applications / 2).map(|k| 2 * k).collect();
    let mut mean_real = vec![0.0; steps.len()];
    let mut max_abs_imag = vec![0.0f64; steps.len()];
    for t in &traces {
        for (k, v) in t.iter().enumerate() {
            mean_real[k] += v.re;
            max_abs_imag[k] = max_abs_imag[k].max(v.im.abs());
        }
    }
    mean_real.iter_mut().for_each(|m| *m /= trials as f64);
    let per_trial = traces
        .into_iter()
        .map(|t| t.into_iter().map(|v| v.re).collect())
        .collect();
    Ok(DecayRun {
        steps,
        mean_real,
        max_abs_imag,
        per_trial,
    })
}
