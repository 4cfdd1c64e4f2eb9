//! Unitary-preserving circuit rewrites.

use super::{Circuit, Gate};
use crate::error::Result;

/// Rewrites extended gates into the core set: `X = HZH`, and CNOT/CCX as
/// CZ/CCZ conjugated by Hadamards on the target.
pub fn lower(c: &Circuit) -> Circuit {
    let mut out = Vec::with_capacity(c.len());
    for &g in c.gates() {
        match g {
            Gate::X(q) => out.extend([Gate::H(q), Gate::Z(q), Gate::H(q)]),
            Gate::CNOT(a, t) => out.extend([Gate::H(t), Gate::CZ(a, t), Gate::H(t)]),
            Gate::CCX(a, b, t) => out.extend([Gate::H(t), Gate::CCZ(a, b, t), Gate::H(t)]),
            core => out.push(core),
        }
    }
    c.with_gates(out)
}

/// Inverse circuit. Every core gate is real and self-inverse, so this is the
/// reversed gate list.
pub fn dagger(c: &Circuit) -> Result<Circuit> {
    c.require_core()?;
    Ok(c.with_gates(c.gates().iter().rev().copied().collect()))
}

/// Internal part whose `<0|·|0>` amplitude is `P(0) - P(1)` for measuring
/// qubit 0 after the full circuit `H C' H` acts on `|0>`.
///
/// With `C = H C' H` the observable is `C† Z₀ C = H (C'† · H Z₀ H · C') H`,
/// so the internal part is `C'`, then `H Z H` on qubit 0, then `C'` reversed.
pub fn sandwich_measurement(c: &Circuit) -> Result<Circuit> {
    c.require_core()?;
    let mut out = Vec::with_capacity(2 * c.len() + 3);
    out.extend_from_slice(c.gates());
    out.extend([Gate::H(0), Gate::Z(0), Gate::H(0)]);
    out.extend(c.gates().iter().rev().copied());
    Ok(c.with_gates(out))
}

/// Inserts `H H` on every qubit between each pair of consecutive gates. The
/// unitary is unchanged and every variable of the compiled polynomial then
/// occurs in at most three monomials.
pub fn insert_h_pairs(c: &Circuit) -> Result<Circuit> {
    c.require_core()?;
    let n = c.n_qubits();
    let mut out = Vec::with_capacity(c.len() * (1 + 2 * n));
    for (i, &g) in c.gates().iter().enumerate() {
        if i > 0 {
            for q in 0..n {
                out.extend([Gate::H(q), Gate::H(q)]);
            }
        }
        out.push(g);
    }
    Ok(c.with_gates(out))
}

/// Removes `H·H` pairs on a qubit with no gate touching that qubit in
/// between, to a fixed point.
pub fn simplify_hh(c: &Circuit) -> Circuit {
    let n = c.n_qubits();
    let mut kept: Vec<Option<Gate>> = Vec::with_capacity(c.len());
    // Per qubit: surviving gates that touch it, in order.
    let mut stacks: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &g in c.gates() {
        if let Gate::H(q) = g {
            if let Some(&top) = stacks[q].last() {
                if matches!(kept[top], Some(Gate::H(_))) {
                    kept[top] = None;
                    stacks[q].pop();
                    continue;
                }
            }
        }
        let idx = kept.len();
        kept.push(Some(g));
        for &q in g.qubits().iter() {
            stacks[q].push(idx);
        }
    }
    c.with_gates(kept.into_iter().flatten().collect())
}
