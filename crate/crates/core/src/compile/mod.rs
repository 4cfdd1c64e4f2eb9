//! The circuit ↔ polynomial correspondence.
//!
//! Each wire of the internal part is cut into segments at its Hadamard gates
//! and every segment gets a variable. An `H` joining segments `u`, `v`
//! contributes `u·v`; `Z`, `CZ`, `CCZ` contribute the product of the segment
//! variables they act on. The result has `n = h + ℓ` variables and
//! `<0|C|0> = gap(f) / 2^(h/2 + ℓ)`.

mod amplitude;

use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};
use crate::f2poly::{Monomial, Poly};

pub use amplitude::{amplitude, amplitude_00, meas_prob_first_qubit, Amplitude, Dyadic};
pub(crate) use amplitude::exact_div_pow2;

/// A compiled circuit: `f_C` plus the per-qubit segment chains.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompiledPoly {
    poly: Poly,
    h: usize,
    n_qubits: usize,
    segments: Vec<Vec<u32>>,
}

impl CompiledPoly {
    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn into_poly(self) -> Poly {
        self.poly
    }

    /// Number of internal Hadamard gates.
    pub fn h(&self) -> usize {
        self.h
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn n_vars(&self) -> usize {
        self.poly.n_vars()
    }

    /// Segment variables of qubit `q`, left to right.
    pub fn segments(&self, q: usize) -> &[u32] {
        &self.segments[q]
    }

    pub fn first_var(&self, q: usize) -> u32 {
        self.segments[q][0]
    }

    pub fn last_var(&self, q: usize) -> u32 {
        *self.segments[q].last().expect("every qubit has a segment")
    }

    /// Exponent `k = h + 2ℓ` with `<0|C|0> = gap / 2^(k/2)`.
    pub fn amplitude_exponent(&self) -> u64 {
        (self.h + 2 * self.n_qubits) as u64
    }

    /// Polynomial text preceded by machine-readable header comments.
    pub fn to_report(&self) -> String {
        let mut s = format!("# h={} l={} n={}\n", self.h, self.n_qubits, self.n_vars());
        for q in 0..self.n_qubits {
            s.push_str(&format!("# first_var q{q}=x{}\n", self.first_var(q)));
        }
        for q in 0..self.n_qubits {
            s.push_str(&format!("# last_var q{q}=x{}\n", self.last_var(q)));
        }
        s.push_str(&self.poly.to_text());
        s
    }
}

/// Compiles the internal part of a core circuit.
///
/// Numbering: the leftmost segment of qubit `q` is `x_{q+1}`; each Hadamard,
/// in gate order, opens the next fresh variable `x_{ℓ+1}, x_{ℓ+2}, …`. A
/// circuit without Hadamards therefore compiles with the identity numbering.
pub fn circuit_to_poly(c: &Circuit) -> Result<CompiledPoly> {
    c.require_core()?;
    let l = c.n_qubits();
    let h = c.hadamard_count();
    let n = l + h;
    let mut poly = Poly::zero(n);
    let mut segments: Vec<Vec<u32>> = (1..=l as u32).map(|v| vec![v]).collect();
    let mut next = l as u32 + 1;
    let cur = |segs: &Vec<Vec<u32>>, q: usize| *segs[q].last().expect("non-empty");
    for &g in c.gates() {
        match g {
            Gate::H(q) => {
                let before = cur(&segments, q);
                segments[q].push(next);
                poly.toggle_unchecked(Monomial::pair(before, next));
                next += 1;
            }
            Gate::Z(a) => poly.toggle_unchecked(Monomial::var(cur(&segments, a))),
            Gate::CZ(a, b) => poly.toggle_unchecked(Monomial::pair(cur(&segments, a), cur(&segments, b))),
            Gate::CCZ(a, b, t) => poly.toggle_unchecked(Monomial::new(&[
                cur(&segments, a),
                cur(&segments, b),
                cur(&segments, t),
            ])?),
            _ => unreachable!("checked by require_core"),
        }
    }
    Ok(CompiledPoly { poly, h, n_qubits: l, segments })
}

/// Builds a Hadamard-free circuit on `n_vars` qubits with one Z/CZ/CCZ per
/// monomial. The constant term cannot be produced by gates; it is returned as
/// the sign `(-1)^constant` that multiplies every amplitude.
pub fn poly_to_circuit(f: &Poly) -> Result<(Circuit, i8)> {
    if f.degree() > 3 {
        return Err(Error::DegreeTooHigh { degree: f.degree(), max: 3 });
    }
    let mut c = Circuit::new(f.n_vars())?;
    for m in f.terms() {
        let q: Vec<usize> = m.vars().iter().map(|&v| v as usize - 1).collect();
        let g = match q[..] {
            [a] => Gate::Z(a),
            [a, b] => Gate::CZ(a, b),
            [a, b, t] => Gate::CCZ(a, b, t),
            _ => unreachable!(),
        };
        c.push(g)?;
    }
    Ok((c, if f.constant() { -1 } else { 1 }))
}
