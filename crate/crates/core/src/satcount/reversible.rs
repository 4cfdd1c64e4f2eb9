//! Bennett-style reversible synthesis over {X, CNOT, CCX}.
//!
//! Qubit layout: inputs `0..n`, output `n`, ancillas from `n + 1`. NOT is
//! never materialized on its own wire: every signal carries a negation flag
//! that is applied with X gates around the gate that consumes it.

use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};

use super::netlist::{BoolCircuit, BoolOp, Signal};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Sig {
    Const(bool),
    Wire { q: usize, neg: bool },
}

impl Sig {
    fn not(self) -> Sig {
        match self {
            Sig::Const(c) => Sig::Const(!c),
            Sig::Wire { q, neg } => Sig::Wire { q, neg: !neg },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReversibleCircuit {
    n_inputs: usize,
    n_ancillas: usize,
    circuit: Circuit,
}

impl ReversibleCircuit {
    pub fn n_inputs(&self) -> usize {
        self.n_inputs
    }

    pub fn n_ancillas(&self) -> usize {
        self.n_ancillas
    }

    pub fn output_qubit(&self) -> usize {
        self.n_inputs
    }

    pub fn circuit(&self) -> &Circuit {
        &self.circuit
    }

    /// Runs the circuit classically on `|x>_I |0>_O |0>_A` and returns all
    /// register bits.
    pub fn run_classical(&self, x: &[bool]) -> Result<Vec<bool>> {
        if x.len() != self.n_inputs {
            return Err(Error::InputShape { expected: self.n_inputs, got: x.len() });
        }
        let mut bits = vec![false; self.circuit.n_qubits()];
        bits[..x.len()].copy_from_slice(x);
        for g in self.circuit.gates() {
            match *g {
                Gate::X(t) => bits[t] ^= true,
                Gate::CNOT(c, t) => bits[t] ^= bits[c],
                Gate::CCX(a, b, t) => bits[t] ^= bits[a] & bits[b],
                other => return Err(Error::InvalidGate(format!("{other} in a reversible circuit"))),
            }
        }
        Ok(bits)
    }
}

struct Builder {
    gates: Vec<Gate>,
    next: usize,
}

impl Builder {
    fn fresh(&mut self) -> usize {
        self.next += 1;
        self.next - 1
    }

    fn and(&mut self, a: Sig, b: Sig) -> Sig {
        match (a, b) {
            (Sig::Const(false), _) | (_, Sig::Const(false)) => Sig::Const(false),
            (Sig::Const(true), s) | (s, Sig::Const(true)) => s,
            (Sig::Wire { q: p, neg: np }, Sig::Wire { q, neg: nq }) if p == q => {
                if np == nq {
                    a
                } else {
                    Sig::Const(false)
                }
            }
            (Sig::Wire { q: p, neg: np }, Sig::Wire { q, neg: nq }) => {
                let t = self.fresh();
                let flips: Vec<Gate> = [(p, np), (q, nq)].into_iter().filter(|f| f.1).map(|f| Gate::X(f.0)).collect();
                self.gates.extend(&flips);
                self.gates.push(Gate::CCX(p, q, t));
                self.gates.extend(&flips);
                Sig::Wire { q: t, neg: false }
            }
        }
    }

    fn xor(&mut self, a: Sig, b: Sig) -> Sig {
        match (a, b) {
            (Sig::Const(c), s) | (s, Sig::Const(c)) => {
                if c {
                    s.not()
                } else {
                    s
                }
            }
            (Sig::Wire { q: p, neg: np }, Sig::Wire { q, neg: nq }) if p == q => Sig::Const(np ^ nq),
            (Sig::Wire { q: p, neg: np }, Sig::Wire { q, neg: nq }) => {
                let t = self.fresh();
                self.gates.extend([Gate::CNOT(p, t), Gate::CNOT(q, t)]);
                Sig::Wire { q: t, neg: np ^ nq }
            }
        }
    }
}

/// Compute, copy the result to the output qubit, uncompute. Uses at most one
/// ancilla per binary gate; ancillas end in `|0>`.
pub fn to_reversible(b: &BoolCircuit) -> ReversibleCircuit {
    let n = b.n_inputs();
    let mut bld = Builder { gates: Vec::new(), next: n + 1 };
    let mut sigs: Vec<Sig> = Vec::with_capacity(b.gates().len());
    let get = |sigs: &Vec<Sig>, s: Signal| match s {
        Signal::Input(i) => Sig::Wire { q: i, neg: false },
        Signal::Gate(g) => sigs[g],
    };
    for g in b.gates() {
        let s = match *g {
            BoolOp::And(x, y) => bld.and(get(&sigs, x), get(&sigs, y)),
            // De Morgan: a ∨ b = ¬(¬a ∧ ¬b)
            BoolOp::Or(x, y) => bld.and(get(&sigs, x).not(), get(&sigs, y).not()).not(),
            BoolOp::Xor(x, y) => bld.xor(get(&sigs, x), get(&sigs, y)),
            BoolOp::Not(x) => get(&sigs, x).not(),
        };
        sigs.push(s);
    }
    let compute = std::mem::take(&mut bld.gates);
    let mut gates = compute.clone();
    match get(&sigs, b.output()) {
        Sig::Const(c) => {
            if c {
                gates.push(Gate::X(n));
            }
        }
        Sig::Wire { q, neg } => {
            gates.push(Gate::CNOT(q, n));
            if neg {
                gates.push(Gate::X(n));
            }
        }
    }
    gates.extend(compute.iter().rev());
    let circuit = Circuit::from_gates(bld.next, gates).expect("gates are in range by construction");
    ReversibleCircuit { n_inputs: n, n_ancillas: bld.next - n - 1, circuit }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::satcount::random_netlist;

    fn check(b: &BoolCircuit) {
        let r = to_reversible(b);
        assert!(r.n_ancillas() <= b.binary_gate_count());
        for m in 0u32..1 << b.n_inputs() {
            let x: Vec<bool> = (0..b.n_inputs()).map(|i| m >> i & 1 == 1).collect();
            let bits = r.run_classical(&x).unwrap();
            assert_eq!(&bits[..x.len()], &x[..]);
            assert_eq!(bits[r.output_qubit()], b.eval(&x).unwrap());
            assert!(bits[r.output_qubit() + 1..].iter().all(|&a| !a));
        }
    }

    #[test]
    fn fixtures() {
        for text in [
            "inputs 2\ng1 = AND x1 x2\noutput g1",
            "inputs 2\ng1 = OR x1 x2\noutput g1",
            "inputs 2\ng1 = XOR x1 x2\noutput g1",
            "inputs 1\ng1 = NOT x1\noutput g1",
            "inputs 1\ng1 = AND x1 x1\ng2 = XOR g1 x1\noutput g2",
            "inputs 1\ng1 = NOT x1\ng2 = AND x1 g1\ng3 = OR g2 g1\noutput g3",
            "inputs 3\noutput x2",
        ] {
            check(&BoolCircuit::parse(text).unwrap());
        }
    }

    #[test]
    fn random_netlists_restore_ancillas() {
        for seed in 0..20 {
            check(&random_netlist(1 + (seed % 8) as usize, 12, seed).unwrap());
        }
    }
}
