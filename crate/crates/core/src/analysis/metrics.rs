use nalgebra::DMatrix;

use super::eigen::{hermitian_eigen, hermitian_eigenvalues};
use crate::register::DensityMatrix;
use crate::{Error, Result, C64};

const HERMITIAN_TOL: f64 = 1e-8;
const NEGATIVE_TOL: f64 = 1e-8;
const PURITY_TOL: f64 = 1e-10;

/// Distance and closeness of a state to a reference, plus selected entries.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricReport {
    pub trace_distance: f64,
    pub fidelity: f64,
    /// `(row, col, value)` with 1-based indices.
    pub support: Vec<(usize, usize, C64)>,
}

fn check_pair(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<()> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimensionMismatch {
            expected: rho.dim(),
            found: sigma.dim(),
        });
    }
    for m in [rho, sigma] {
        let e = m.hermiticity_error();
        if e > HERMITIAN_TOL {
            return Err(Error::NotHermitian(e));
        }
    }
    Ok(())
}

/// `½ Σ |λᵢ|` over the eigenvalues of `ρ − σ`.
pub fn trace_distance(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    check_pair(rho, sigma)?;
    let diff: Vec<C64> = rho
        .data()
        .iter()
        .zip(sigma.data())
        .map(|(a, b)| a - b)
        .collect();
    let eig = hermitian_eigenvalues(&diff, rho.dim())?;
    Ok(0.5 * eig.iter().map(|l| l.abs()).sum::<f64>())
}

fn purity(m: &DensityMatrix) -> f64 {
    m.data().iter().map(|v| v.norm_sqr()).sum()
}

fn is_pure(m: &DensityMatrix) -> bool {
    (m.trace().re - 1.0).abs() <= PURITY_TOL && (purity(m) - 1.0).abs() <= PURITY_TOL
}

/// `Tr(ρσ)` for Hermitian arguments.
fn overlap(rho: &DensityMatrix, sigma: &DensityMatrix) -> f64 {
    let d = rho.dim();
    let (a, b) = (rho.data(), sigma.data());
    let mut acc = C64::new(0.0, 0.0);
    for i in 0..d {
        for j in 0..d {
            acc += a[i * d + j] * b[j * d + i];
        }
    }
    acc.re
}

fn check_psd(values: &[f64]) -> Result<()> {
    match values.first() {
        Some(&min) if min < -NEGATIVE_TOL => Err(Error::NegativeEigenvalue(min)),
        _ => Ok(()),
    }
}

/// Uhlmann fidelity `Tr √(√ρ σ √ρ)`.
///
/// When either argument is a pure state `|ψ⟩⟨ψ|` this reduces to
/// `√⟨ψ|ρ|ψ⟩ = √Tr(ρσ)`, which is evaluated directly.
pub fn fidelity(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    check_pair(rho, sigma)?;
    if is_pure(sigma) || is_pure(rho) {
        let ov = overlap(rho, sigma);
        if ov < -NEGATIVE_TOL {
            return Err(Error::NegativeEigenvalue(ov));
        }
        return Ok(ov.max(0.0).sqrt());
    }

    let d = rho.dim();
    check_psd(&hermitian_eigenvalues(sigma.data(), d)?)?;
    let eig = hermitian_eigen(rho.data(), d)?;
    check_psd(&eig.values)?;
    let roots = DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
        d,
        eig.values.iter().map(|&l| C64::new(l.max(0.0).sqrt(), 0.0)),
    ));
    let sqrt_rho = &eig.vectors * roots * eig.vectors.adjoint();
    let s = DMatrix::from_row_slice(d, d, sigma.data());
    let inner = &sqrt_rho * s * &sqrt_rho;
    // symmetrise away rounding before the second decomposition
    let inner = (&inner + inner.adjoint()) * C64::new(0.5, 0.0);
    let row_major: Vec<C64> = inner.transpose().iter().copied().collect();
    let values = hermitian_eigenvalues(&row_major, d)?;
    check_psd(&values)?;
    Ok(values.iter().map(|&l| l.max(0.0).sqrt()).sum())
}

/// Trace distance and fidelity of `rho` against `target`, plus the entries
/// of `rho` on `support × support` (column-major over the support, as in the
/// usual tabulation: `(s1,s1), (s2,s1), …`).
pub fn metric_report(
    rho: &DensityMatrix,
    target: &DensityMatrix,
    support: &[usize],
) -> Result<MetricReport> {
    for &s in support {
        if s == 0 || s > rho.dim() {
            return Err(Error::IndexOutOfRange {
                index: s,
                max: rho.dim(),
            });
        }
    }
    let entries = support
        .iter()
        .flat_map(|&c| support.iter().map(move |&r| (r, c)))
        .map(|(r, c)| (r, c, rho.entry(r, c)))
        .collect();
    Ok(MetricReport {
        trace_distance: trace_distance(rho, target)?,
        fidelity: fidelity(rho, target)?,
        support: entries,
    })
}
