//! Plain-text circuit files.
//!
//! One gate per line, `TOFFOLI c1 c2 t` or `CNOT c t`, using the qubit names
//! `X Y Z W A0 A1 A2 A3`. Keywords and names are case-insensitive. Everything
//! after `#` is a comment; blank lines are ignored.

use super::{Circuit, GateSpec, Qubit};
use crate::{Error, Result};

pub fn parse_circuit(text: &str) -> Result<Circuit> {
    let mut gates = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let err = |message: String| Error::Parse { line, message };
        let words: Vec<&str> = body.split_whitespace().collect();
        let qubits = words[1..]
            .iter()
            .map(|w| {
                w.parse::<Qubit>()
                    .map_err(|_| err(format!("unknown qubit '{w}'")))
            })
            .collect::<Result<Vec<_>>>()?;
        let gate = match (words[0].to_ascii_uppercase().as_str(), qubits.as_slice()) {
            ("CNOT", &[c, t]) => GateSpec::cnot(c, t),
            ("TOFFOLI", &[a, b, t]) => GateSpec::toffoli(a, b, t),
            ("CNOT", _) => return Err(err(format!("CNOT takes 2 qubits, found {}", qubits.len()))),
            ("TOFFOLI", _) => {
                return Err(err(format!(
                    "TOFFOLI takes 3 qubits, found {}",
                    qubits.len()
                )))
            }
            (other, _) => return Err(err(format!("unknown gate '{other}'"))),
        }
        .map_err(|e| err(e.to_string()))?;
        gates.push(gate);
    }
    Ok(Circuit::new(gates))
}

/// Serialises a circuit, preceded by optional `#` comment lines.
pub fn write_circuit(c: &Circuit, comments: &[&str]) -> String {
    let mut out = String::new();
    for line in comments {
        out.push_str("# ");
        out.push_str(line);
        out.push('\n');
    }
    for g in &c.gates {
        out.push_str(&g.to_string());
        out.push('\n');
    }
    out
}
