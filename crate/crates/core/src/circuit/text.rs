//! Circuit text format: a `qubits <ℓ>` header followed by one gate per line
//! (`H q`, `Z q`, `CZ a b`, `CCZ a b c`, `X q`, `CNOT c t`, `CCX c1 c2 t`).
//! `#` starts a comment; blank lines are ignored.

use std::str::FromStr;

use super::{Circuit, Gate};
use crate::error::{Error, Result};

impl Circuit {
    pub fn parse(text: &str) -> Result<Circuit> {
        let mut circuit: Option<Circuit> = None;
        for (idx, raw) in text.lines().enumerate() {
            let lineno = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut words = line.split_whitespace();
            let head = words.next().expect("non-empty line");
            let Some(c) = circuit.as_mut() else {
                match (head, words.next(), words.next()) {
                    ("qubits", Some(n), None) => {
                        let n: usize = n.parse().map_err(|_| Error::parse(lineno, format!("bad qubit count {n:?}")))?;
                        circuit = Some(Circuit::new(n).map_err(|e| Error::parse(lineno, e.to_string()))?);
                        continue;
                    }
                    _ => return Err(Error::parse(lineno, "expected header `qubits <n>`")),
                }
            };
            let qubits = words
                .map(|w| w.parse::<usize>().map_err(|_| Error::parse(lineno, format!("bad qubit index {w:?}"))))
                .collect::<Result<Vec<_>>>()?;
            let gate = Gate::from_parts(head, &qubits).map_err(|e| Error::parse(lineno, e.to_string()))?;
            c.push(gate).map_err(|e| Error::parse(lineno, e.to_string()))?;
        }
        circuit.ok_or_else(|| Error::parse(0, "missing header `qubits <n>`"))
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("qubits {}\n", self.n_qubits());
        for g in self.gates() {
            s.push_str(&g.to_string());
            s.push('\n');
        }
        s
    }
}

impl FromStr for Circuit {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Circuit::parse(s)
    }
}
