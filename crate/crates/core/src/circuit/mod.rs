//! Circuit intermediate representation.
//!
//! A [`Circuit`] always stores the internal part `C'` of the full circuit
//! `C = H^⊗ℓ · C' · H^⊗ℓ`; the outer Hadamard columns are implicit. Qubits are
//! 0-based.

mod random;
mod rewrite;
mod text;

use std::fmt;
use std::ops::Deref;

use crate::error::{Error, Result};

pub use random::random_circuit;
pub use rewrite::{dagger, insert_h_pairs, lower, sandwich_measurement, simplify_hh};

/// A gate. `H`, `Z`, `CZ`, `CCZ` form the core set; `X`, `CNOT`, `CCX` are
/// extended gates that must be lowered before compilation. For `CNOT` and
/// `CCX` the last qubit is the target.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Gate {
    H(usize),
    Z(usize),
    CZ(usize, usize),
    CCZ(usize, usize, usize),
    X(usize),
    CNOT(usize, usize),
    CCX(usize, usize, usize),
}

/// Qubits a gate acts on, in operand order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Qubits {
    q: [usize; 3],
    len: usize,
}

impl Deref for Qubits {
    type Target = [usize];
    fn deref(&self) -> &[usize] {
        &self.q[..self.len]
    }
}

impl Gate {
    pub fn name(&self) -> &'static str {
        match self {
            Gate::H(_) => "H",
            Gate::Z(_) => "Z",
            Gate::CZ(..) => "CZ",
            Gate::CCZ(..) => "CCZ",
            Gate::X(_) => "X",
            Gate::CNOT(..) => "CNOT",
            Gate::CCX(..) => "CCX",
        }
    }

    pub fn qubits(&self) -> Qubits {
        match *self {
            Gate::H(a) | Gate::Z(a) | Gate::X(a) => Qubits { q: [a, 0, 0], len: 1 },
            Gate::CZ(a, b) | Gate::CNOT(a, b) => Qubits { q: [a, b, 0], len: 2 },
            Gate::CCZ(a, b, c) | Gate::CCX(a, b, c) => Qubits { q: [a, b, c], len: 3 },
        }
    }

    pub fn is_core(&self) -> bool {
        matches!(self, Gate::H(_) | Gate::Z(_) | Gate::CZ(..) | Gate::CCZ(..))
    }

    pub fn touches(&self, q: usize) -> bool {
        self.qubits().contains(&q)
    }

    /// Builds a gate from its name and operand list.
    pub fn from_parts(name: &str, qubits: &[usize]) -> Result<Gate> {
        let arity_err = |want: usize| Error::InvalidGate(format!("{name} takes {want} qubit(s), got {}", qubits.len()));
        let g = match (name, qubits) {
            ("H", &[a]) => Gate::H(a),
            ("Z", &[a]) => Gate::Z(a),
            ("X", &[a]) => Gate::X(a),
            ("CZ", &[a, b]) => Gate::CZ(a, b),
            ("CNOT", &[a, b]) => Gate::CNOT(a, b),
            ("CCZ", &[a, b, c]) => Gate::CCZ(a, b, c),
            ("CCX", &[a, b, c]) => Gate::CCX(a, b, c),
            ("H" | "Z" | "X", _) => return Err(arity_err(1)),
            ("CZ" | "CNOT", _) => return Err(arity_err(2)),
            ("CCZ" | "CCX", _) => return Err(arity_err(3)),
            _ => return Err(Error::InvalidGate(format!("unknown gate {name:?}"))),
        };
        Ok(g)
    }

    fn validate(&self, n_qubits: usize) -> Result<()> {
        let qs = self.qubits();
        for (i, &q) in qs.iter().enumerate() {
            if q >= n_qubits {
                return Err(Error::InvalidGate(format!("{self}: qubit {q} out of range for {n_qubits} qubit(s)")));
            }
            if qs[..i].contains(&q) {
                return Err(Error::InvalidGate(format!("{self}: repeated qubit {q}")));
            }
        }
        Ok(())
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())?;
        for q in self.qubits().iter() {
            write!(f, " {q}")?;
        }
        Ok(())
    }
}

/// Internal part of a circuit on `n_qubits ≥ 1` qubits.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Circuit {
    n_qubits: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(n_qubits: usize) -> Result<Self> {
        if n_qubits == 0 {
            return Err(Error::Precondition("a circuit needs at least one qubit".into()));
        }
        Ok(Circuit { n_qubits, gates: Vec::new() })
    }

    pub fn from_gates(n_qubits: usize, gates: impl IntoIterator<Item = Gate>) -> Result<Self> {
        let mut c = Circuit::new(n_qubits)?;
        for g in gates {
            c.push(g)?;
        }
        Ok(c)
    }

    pub fn push(&mut self, g: Gate) -> Result<()> {
        g.validate(self.n_qubits)?;
        self.gates.push(g);
        Ok(())
    }

    /// Same qubit count, new gate list; gates are assumed already valid.
    pub(crate) fn with_gates(&self, gates: Vec<Gate>) -> Circuit {
        debug_assert!(gates.iter().all(|g| g.validate(self.n_qubits).is_ok()));
        Circuit { n_qubits: self.n_qubits, gates }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn hadamard_count(&self) -> usize {
        self.gates.iter().filter(|g| matches!(g, Gate::H(_))).count()
    }

    pub fn is_core(&self) -> bool {
        self.gates.iter().all(Gate::is_core)
    }

    /// Fails with [`Error::MustLowerFirst`] if an extended gate is present.
    pub fn require_core(&self) -> Result<()> {
        match self.gates.iter().find(|g| !g.is_core()) {
            Some(g) => Err(Error::MustLowerFirst { gate: g.to_string() }),
            None => Ok(()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(Circuit::new(0).is_err());
        assert!(Circuit::from_gates(2, [Gate::CZ(0, 0)]).is_err());
        assert!(Circuit::from_gates(2, [Gate::CZ(0, 2)]).is_err());
        let c = Circuit::from_gates(3, [Gate::H(0), Gate::CCX(0, 1, 2)]).unwrap();
        assert!(!c.is_core());
        assert!(matches!(c.require_core(), Err(Error::MustLowerFirst { .. })));
    }

    #[test]
    fn gate_parts() {
        assert_eq!(Gate::from_parts("CCZ", &[0, 1, 2]).unwrap(), Gate::CCZ(0, 1, 2));
        assert!(Gate::from_parts("CZ", &[0]).is_err());
        assert!(Gate::from_parts("T", &[0]).is_err());
        assert_eq!(Gate::CNOT(3, 1).to_string(), "CNOT 3 1");
    }
}
