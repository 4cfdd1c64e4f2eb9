//! Counting satisfying assignments of a boolean circuit through the
//! polynomial pipeline.
//!
//! For `g` computed reversibly by `R`, the internal circuit
//! `X_O H_I H_O R H_I H_O X_O` has `<0|·|0> = gap(g) / 2^n`, so the number of
//! satisfying inputs is `(2^n - gap(g)) / 2`.

mod netlist;
mod reversible;

use num_bigint::BigInt;
use num_traits::{One, Signed};

pub use netlist::{random_netlist, BoolCircuit, BoolOp, Signal};
pub use reversible::{to_reversible, ReversibleCircuit};

use crate::circuit::{lower, simplify_hh, Circuit, Gate};
use crate::compile::{amplitude_00, circuit_to_poly};
use crate::error::{Error, Result};
use crate::gap::GapOptions;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SatCount {
    pub count: BigInt,
    /// `gap(g) = 2^n - 2·count`.
    pub gap: BigInt,
    /// Variables of the compiled polynomial.
    pub poly_vars: usize,
}

/// The stored internal gate list for the counting circuit, already lowered
/// and with adjacent Hadamard pairs removed.
pub fn counting_circuit(b: &BoolCircuit) -> Result<Circuit> {
    let r = to_reversible(b);
    let n = b.n_inputs();
    let o = r.output_qubit();
    let l = r.circuit().n_qubits();
    let mut gates = Vec::new();
    gates.extend((0..l).map(Gate::H));
    gates.push(Gate::X(o));
    gates.extend((0..n).map(Gate::H));
    gates.push(Gate::H(o));
    gates.extend_from_slice(r.circuit().gates());
    gates.extend((0..n).map(Gate::H));
    gates.push(Gate::H(o));
    gates.push(Gate::X(o));
    gates.extend((0..l).map(Gate::H));
    let c = Circuit::from_gates(l, gates)?;
    Ok(simplify_hh(&lower(&c)))
}

pub fn count_sat(b: &BoolCircuit, opts: &GapOptions) -> Result<SatCount> {
    let n = b.n_inputs() as u64;
    let c = counting_circuit(b)?;
    let poly_vars = circuit_to_poly(&c)?.n_vars();
    let a = amplitude_00(&c, opts)?;
    let d = a.to_dyadic().ok_or_else(|| Error::Precondition("counting amplitude has an odd exponent".into()))?;
    // gap = a · 2^n
    let gap = if d.exponent() <= n {
        d.numerator() << (n - d.exponent())
    } else {
        crate::compile::exact_div_pow2(d.numerator(), d.exponent() - n)
            .ok_or_else(|| Error::Precondition("counting amplitude is not a multiple of 2^-n".into()))?
    };
    let diff: BigInt = (BigInt::one() << n) - &gap;
    if diff.is_negative() || diff.bit(0) {
        return Err(Error::Precondition(format!("gap {gap} is inconsistent with {n} inputs")));
    }
    Ok(SatCount { count: diff >> 1, gap, poly_vars })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count(text: &str) -> u64 {
        let b = BoolCircuit::parse(text).unwrap();
        let r = count_sat(&b, &GapOptions::default()).unwrap();
        r.count.try_into().unwrap()
    }

    #[test]
    fn fixtures() {
        assert_eq!(count("inputs 2\ng1 = AND x1 x2\noutput g1"), 1);
        assert_eq!(count("inputs 2\ng1 = OR x1 x2\noutput g1"), 3);
        assert_eq!(count("inputs 2\ng1 = XOR x1 x2\noutput g1"), 2);
        assert_eq!(count("inputs 1\ng1 = NOT x1\noutput g1"), 1);
        assert_eq!(count("inputs 3\ng1 = XOR x1 x1\noutput g1"), 0);
    }

    #[test]
    fn random_match_enumeration() {
        for seed in 0..30 {
            let b = random_netlist(1 + (seed % 8) as usize, 12, seed).unwrap();
            let r = count_sat(&b, &GapOptions::default()).unwrap();
            let want = b.count_by_enumeration().unwrap();
            assert_eq!(r.count, BigInt::from(want));
            assert_eq!(r.gap, (BigInt::one() << b.n_inputs()) - 2 * BigInt::from(want));
        }
    }
}
