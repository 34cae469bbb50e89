//! `multiplier search | verify | noisy`.

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};

use qdm_core::analysis::anova_one_way;
use qdm_core::multiplier::{
    multiplier_truth_table, parse_circuit, run_noisy_multiplier, search_circuits,
    simulate_classical, verify_multiplier, write_circuit, Circuit, NoisyRun, Qubit, SearchOptions,
    REGISTER_QUBITS,
};
use qdm_core::noise::SeedStream;
use qdm_core::{DensityMatrix, C64};

use crate::decay::Family;
use crate::error::{CliError, CliResult};
use crate::report::{Cell, Report, Table};

/// Reads and parses a circuit file, tagging errors with the path.
pub fn load_circuit(path: &Path) -> CliResult<Circuit> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_circuit(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn label(path: &Path) -> String {
    path.file_stem()
        .and_then(|s| s.to_str())
        .map(str::to_string)
        .unwrap_or_else(|| path.display().to_string())
}

/// Unique column labels: file stems, with the position appended on clashes.
fn labels(paths: &[PathBuf]) -> Vec<String> {
    let stems: Vec<String> = paths.iter().map(|p| label(p)).collect();
    stems
        .iter()
        .enumerate()
        .map(|(i, s)| {
            if stems.iter().filter(|t| *t == s).count() > 1 {
                format!("{s}#{}", i + 1)
            } else {
                s.clone()
            }
        })
        .collect()
}

pub fn search(max_gates: usize, dedup: bool, out_dir: Option<&Path>) -> CliResult<Report> {
    if max_gates == 0 {
        return Err(CliError::Usage("max-gates must be at least 1".into()));
    }
    let opts = SearchOptions {
        dedup,
        ..SearchOptions::new(max_gates)
    };
    let found = search_circuits(&opts);
    if let Some(dir) = out_dir {
        fs::create_dir_all(dir).map_err(|source| CliError::Io {
            path: dir.display().to_string(),
            source,
        })?;
    }
    let mut table = Table::new("circuits", &["index", "gates", "valid", "circuit", "file"]);
    for (i, c) in found.iter().enumerate() {
        let file = match out_dir {
            Some(dir) => {
                let path = dir.join(format!("circuit_{:03}.txt", i + 1));
                let header = format!("multiplier circuit {} of {}", i + 1, found.len());
                fs::write(&path, write_circuit(c, &[&header])).map_err(|source| CliError::Io {
                    path: path.display().to_string(),
                    source,
                })?;
                path.display().to_string()
            }
            None => String::new(),
        };
        table.push(vec![
            Cell::from(i + 1),
            Cell::from(c.len()),
            Cell::from(verify_multiplier(c)),
            Cell::from(c.to_string()),
            Cell::from(file),
        ]);
    }
    let mut report = Report::new("multiplier search");
    report.tables.push(table);
    Ok(report)
}

fn product_of(bits: u8) -> u8 {
    Qubit::ANCILLAE
        .iter()
        .enumerate()
        .map(|(k, q)| u8::from(bits & q.mask() != 0) << k)
        .sum()
}

/// Verdict and the 16 truth rows of every circuit. The flag is false when
/// any circuit fails the oracle.
pub fn verify(paths: &[PathBuf]) -> CliResult<(Report, bool)> {
    if paths.is_empty() {
        return Err(CliError::Usage(
            "verify needs at least one --circuit".into(),
        ));
    }
    let circuits = paths
        .iter()
        .map(|p| load_circuit(p))
        .collect::<CliResult<Vec<_>>>()?;
    let names = labels(paths);
    let mut verdicts = Table::new("verdict", &["circuit", "gates", "verdict"]);
    let mut truth = Table::new(
        "truth",
        &["circuit", "x", "y", "z", "w", "expected", "observed", "ok"],
    );
    let mut all_valid = true;
    for (c, name) in circuits.iter().zip(&names) {
        let valid = verify_multiplier(c);
        all_valid &= valid;
        verdicts.push(vec![
            Cell::from(name.as_str()),
            Cell::from(c.len()),
            Cell::from(if valid { "valid" } else { "invalid" }),
        ]);
        for row in multiplier_truth_table() {
            let input = qdm_core::multiplier::input_bits(row.x, row.y, row.z, row.w);
            let out = simulate_classical(c, input);
            truth.push(vec![
                Cell::from(name.as_str()),
                Cell::from(row.x),
                Cell::from(row.y),
                Cell::from(row.z),
                Cell::from(row.w),
                Cell::from(row.value()),
                Cell::from(product_of(out)),
                Cell::from(out == row.output_bits()),
            ]);
        }
    }
    let mut report = Report::new("multiplier verify");
    report.tables.push(verdicts);
    report.tables.push(truth);
    Ok((report, all_valid))
}

#[derive(Debug, Clone)]
pub struct NoisyConfig {
    pub circuits: Vec<PathBuf>,
    pub samples: usize,
    pub variance: f64,
    pub family: Family,
    pub seed: u64,
    pub input: usize,
}

/// Runs every circuit; circuit `i` draws from the stream labelled
/// `multiplier/i` of the seed.
pub fn run_noisy(cfg: &NoisyConfig) -> CliResult<Vec<NoisyRun>> {
    if cfg.circuits.is_empty() {
        return Err(CliError::Usage("noisy needs at least one --circuit".into()));
    }
    if cfg.samples == 0 {
        return Err(CliError::Usage("samples must be at least 1".into()));
    }
    let spec = cfg.family.spec(cfg.variance)?;
    let circuits = cfg
        .circuits
        .iter()
        .map(|p| load_circuit(p))
        .collect::<CliResult<Vec<_>>>()?;
    for (c, p) in circuits.iter().zip(&cfg.circuits) {
        if !verify_multiplier(c) {
            return Err(CliError::Verification(format!(
                "{} does not implement the multiplier",
                p.display()
            )));
        }
    }
    let root = SeedStream::new(cfg.seed);
    circuits
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let seeds = root.derive(&format!("multiplier/{i}"));
            Ok(run_noisy_multiplier(
                c,
                &spec,
                cfg.samples,
                &seeds,
                cfg.input,
            )?)
        })
        .collect()
}

/// Support entries as rows, one column per circuit plus the ideal output.
pub fn noisy(cfg: &NoisyConfig) -> CliResult<Report> {
    let runs = run_noisy(cfg)?;
    let names = labels(&cfg.circuits);
    let support: Vec<usize> = runs
        .iter()
        .flat_map(|r| r.support.iter().copied())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let expected = runs[0].expected;
    let ideal = DensityMatrix::pure_state(expected, REGISTER_QUBITS)?;

    let mut columns = vec!["quantity".to_string()];
    columns.extend(names.iter().cloned());
    columns.push("ideal".into());
    let column_refs: Vec<&str> = columns.iter().map(String::as_str).collect();
    let mut table = Table::new("table", &column_refs);

    let mut max_imag = vec![0.0f64; runs.len()];
    for &c in &support {
        for &r in &support {
            let mut row = vec![Cell::from(format!("({r},{c})"))];
            for (k, run) in runs.iter().enumerate() {
                let v: C64 = run.mean.entry(r, c);
                max_imag[k] = max_imag[k].max(v.im.abs());
                row.push(Cell::from(v.re));
            }
            row.push(Cell::from(ideal.entry(r, c).re));
            table.push(row);
        }
    }
    let summary: [(&str, Vec<f64>, f64); 3] = [
        (
            "trace_distance",
            runs.iter().map(|r| r.report.trace_distance).collect(),
            0.0,
        ),
        (
            "fidelity",
            runs.iter().map(|r| r.report.fidelity).collect(),
            1.0,
        ),
        ("max_abs_imag", max_imag, 0.0),
    ];
    for (name, values, ideal_value) in summary {
        let mut row = vec![Cell::from(name)];
        row.extend(values.into_iter().map(Cell::from));
        row.push(Cell::from(ideal_value));
        table.push(row);
    }

    let mut info = Table::new(
        "runs",
        &["circuit", "samples", "input", "expected", "support"],
    );
    for (run, name) in runs.iter().zip(&names) {
        let s: Vec<String> = run.support.iter().map(|i| i.to_string()).collect();
        info.push(vec![
            Cell::from(name.as_str()),
            Cell::from(run.samples),
            Cell::from(run.input),
            Cell::from(run.expected),
            Cell::from(s.join(" ")),
        ]);
    }

    let mut report = Report::new("multiplier noisy");
    report.tables.push(table);
    report.tables.push(info);

    if runs.len() >= 2 && cfg.samples >= 2 {
        let groups: Vec<&[f64]> = runs
            .iter()
            .map(|r| r.expected_entry_samples.as_slice())
            .collect();
        let a = anova_one_way(&groups)?;
        let mut anova = Table::new(
            "anova",
            &["entry", "groups", "samples", "statistic", "p_value"],
        );
        anova.push(vec![
            Cell::from(format!("({expected},{expected})")),
            Cell::from(runs.len()),
            Cell::from(cfg.samples),
            Cell::from(a.statistic),
            Cell::from(a.p_value),
        ]);
        report.tables.push(anova);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ancilla_bits_decode_to_product() {
        for row in multiplier_truth_table() {
            assert_eq!(product_of(row.output_bits()), row.value());
        }
    }

    #[test]
    fn duplicate_stems_get_positions() {
        let p = vec![
            PathBuf::from("a/r6.txt"),
            PathBuf::from("b/r6.txt"),
            PathBuf::from("x.txt"),
        ];
        assert_eq!(labels(&p), vec!["r6#1", "r6#2", "x"]);
    }
}
