//! Dense statevector simulation of `H^⊗ℓ C' H^⊗ℓ`, used as an independent
//! reference for the polynomial pipeline. Amplitudes stay real because every
//! gate in {H, Z, CZ, CCZ} is a real matrix. Qubit `q` is bit `q` of the
//! basis index.

use rayon::prelude::*;

use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};

pub const MAX_ORACLE_QUBITS: usize = 26;
const PAR_THRESHOLD: usize = 1 << 14;

#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amps: Vec<f64>,
}

impl StateVector {
    pub fn basis(n_qubits: usize, index: usize) -> Result<Self> {
        if n_qubits > MAX_ORACLE_QUBITS {
            return Err(Error::ResourceBudget(format!(
                "statevector simulation of {n_qubits} qubits exceeds the limit of {MAX_ORACLE_QUBITS}"
            )));
        }
        let mut amps = vec![0.0; 1 << n_qubits];
        amps[index] = 1.0;
        Ok(StateVector { n_qubits, amps })
    }

    pub fn amplitudes(&self) -> &[f64] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a * a).sum()
    }

    fn hadamard(&mut self, q: usize) {
        let bit = 1usize << q;
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let pair = |chunk: &mut [f64]| {
            let (lo, hi) = chunk.split_at_mut(bit);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x, y) = (*a, *b);
                *a = (x + y) * s;
                *b = (x - y) * s;
            }
        };
        if self.amps.len() >= PAR_THRESHOLD {
            self.amps.par_chunks_mut(2 * bit).for_each(pair);
        } else {
            self.amps.chunks_mut(2 * bit).for_each(pair);
        }
    }

    fn phase(&mut self, mask: usize) {
        let flip = |(i, a): (usize, &mut f64)| {
            if i & mask == mask {
                *a = -*a;
            }
        };
        if self.amps.len() >= PAR_THRESHOLD {
            self.amps.par_iter_mut().enumerate().for_each(flip);
        } else {
            self.amps.iter_mut().enumerate().for_each(flip);
        }
    }

    pub fn apply(&mut self, g: &Gate) -> Result<()> {
        match *g {
            Gate::H(q) => self.hadamard(q),
            Gate::Z(q) => self.phase(1 << q),
            Gate::CZ(a, b) => self.phase(1 << a | 1 << b),
            Gate::CCZ(a, b, c) => self.phase(1 << a | 1 << b | 1 << c),
            _ => return Err(Error::MustLowerFirst { gate: g.name().to_string() }),
        }
        Ok(())
    }

    /// Runs `H^⊗ℓ C' H^⊗ℓ` on the current state.
    pub fn run(&mut self, c: &Circuit) -> Result<()> {
        c.require_core()?;
        if c.n_qubits() != self.n_qubits {
            return Err(Error::DimensionMismatch { expected: self.n_qubits, got: c.n_qubits() });
        }
        for q in 0..self.n_qubits {
            self.hadamard(q);
        }
        for g in c.gates() {
            self.apply(g)?;
        }
        for q in 0..self.n_qubits {
            self.hadamard(q);
        }
        Ok(())
    }
}

fn index_of(bits: &[bool]) -> usize {
    bits.iter().enumerate().filter(|(_, &b)| b).map(|(q, _)| 1 << q).sum()
}

/// `<output|H C' H|input>` by simulation.
pub fn statevector_amplitude(c: &Circuit, input: &[bool], output: &[bool]) -> Result<f64> {
    let l = c.n_qubits();
    for bits in [input, output] {
        if bits.len() != l {
            return Err(Error::InputShape { expected: l, got: bits.len() });
        }
    }
    let mut s = StateVector::basis(l, index_of(input))?;
    s.run(c)?;
    Ok(s.amps[index_of(output)])
}

/// Probability that qubit 0 reads 1 after `H C' H` acts on `|0...0>`.
pub fn statevector_prob_first_qubit(c: &Circuit) -> Result<f64> {
    let mut s = StateVector::basis(c.n_qubits(), 0)?;
    s.run(c)?;
    Ok(s.amps.iter().enumerate().filter(|(i, _)| i & 1 == 1).map(|(_, a)| a * a).sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::random_circuit;
    use Gate::*;

    #[test]
    fn hadamard_sandwich_of_identity() {
        let c = Circuit::new(3).unwrap();
        assert!((statevector_amplitude(&c, &[false; 3], &[false; 3]).unwrap() - 1.0).abs() < 1e-12);
        let z = Circuit::from_gates(1, [Z(0)]).unwrap();
        // H Z H = X
        assert!((statevector_amplitude(&z, &[false], &[true]).unwrap() - 1.0).abs() < 1e-12);
        assert!((statevector_prob_first_qubit(&z).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn norm_preserved() {
        for seed in 0..20 {
            let c = random_circuit(5, 30, seed).unwrap();
            let mut s = StateVector::basis(5, 3).unwrap();
            s.run(&c).unwrap();
            assert!((s.norm_sqr() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn rejects_extended_and_oversized() {
        let c = Circuit::from_gates(2, [CNOT(0, 1)]).unwrap();
        assert!(matches!(statevector_amplitude(&c, &[false; 2], &[false; 2]), Err(Error::MustLowerFirst { .. })));
        assert!(matches!(StateVector::basis(27, 0), Err(Error::ResourceBudget(_))));
    }
}
