use statrs::function::beta::beta_reg;
use statrs::function::erf::{erfc, erfc_inv};

use crate::{Error, Result};

/// Outcome of a hypothesis test.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TestResult {
    pub statistic: f64,
    pub p_value: f64,
    pub power: Option<f64>,
}

/// Standard normal CDF.
pub fn normal_cdf(x: f64) -> f64 {
    0.5 * erfc(-x / std::f64::consts::SQRT_2)
}

fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

fn sample_variance(xs: &[f64]) -> f64 {
    let m = mean(xs);
    xs.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (xs.len() - 1) as f64
}

/// One-way ANOVA F test for equal group means.
pub fn anova_one_way<G: AsRef<[f64]>>(groups: &[G]) -> Result<TestResult> {
    if groups.len() < 2 {
        return Err(Error::InsufficientSamples {
            required: 2,
            found: groups.len(),
        });
    }
    for g in groups {
        if g.as_ref().len() < 2 {
            return Err(Error::InsufficientSamples {
                required: 2,
                found: g.as_ref().len(),
            });
        }
    }
    let k = groups.len() as f64;
    let total: usize = groups.iter().map(|g| g.as_ref().len()).sum();
    let grand = groups.iter().flat_map(|g| g.as_ref()).sum::<f64>() / total as f64;

    let mut ss_between = 0.0;
    let mut ss_within = 0.0;
    for g in groups {
        let g = g.as_ref();
        let m = mean(g);
        ss_between += g.len() as f64 * (m - grand).powi(2);
        ss_within += g.iter().map(|x| (x - m).powi(2)).sum::<f64>();
    }
    if ss_within == 0.0 {
        return Err(Error::Degenerate("zero variance within every group".into()));
    }
    let df_between = k - 1.0;
    let df_within = total as f64 - k;
    let f = (ss_between / df_between) / (ss_within / df_within);
    // upper tail of F(d1, d2): I_{d2/(d2 + d1 f)}(d2/2, d1/2)
    let x = df_within / (df_within + df_between * f);
    let p = beta_reg(df_within / 2.0, df_between / 2.0, x).clamp(0.0, 1.0);
    Ok(TestResult {
        statistic: f,
        p_value: p,
        power: None,
    })
}

/// Large-sample one-sided two-sample z test of `mean(a) < mean(b)`.
///
/// The reported power is that of the same test at significance `alpha`
/// against an alternative equal to the observed difference.
pub fn ztest_one_sided(sample_a: &[f64], sample_b: &[f64], alpha: f64) -> Result<TestResult> {
    const MIN_SIZE: usize = 30;
    for s in [sample_a, sample_b] {
        if s.len() < MIN_SIZE {
            return Err(Error::InsufficientSamples {
                required: MIN_SIZE,
                found: s.len(),
            });
        }
    }
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "alpha must lie in (0, 1), got {alpha}"
        )));
    }
    let se = (sample_variance(sample_a) / sample_a.len() as f64
        + sample_variance(sample_b) / sample_b.len() as f64)
        .sqrt();
    if se == 0.0 {
        return Err(Error::Degenerate("both samples are constant".into()));
    }
    let z = (mean(sample_a) - mean(sample_b)) / se;
    let z_crit = std::f64::consts::SQRT_2 * erfc_inv(2.0 * alpha);
    Ok(TestResult {
        statistic: z,
        p_value: normal_cdf(z),
        power: Some(normal_cdf(-z - z_crit)),
    })
}
