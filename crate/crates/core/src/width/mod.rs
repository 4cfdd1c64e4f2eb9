//! Bounds on the number of qubits needed to realize a polynomial.
//!
//! Lower bound: a circuit on `w` qubits colors its interaction hypergraph
//! with `2w` colors (qubit, and segment parity along the wire), so
//! `w >= ⌈χ/2⌉`. Upper bound: the qubit count of an explicit circuit.

mod coloring;
mod heuristic;

pub use coloring::{build_hypergraph, chromatic_number, greedy_coloring, Hypergraph, DEFAULT_EXACT_LIMIT};
pub use heuristic::{width_heuristic_circuit, Witness};

use crate::circuit::Circuit;
use crate::error::Result;
use crate::f2poly::Poly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WidthReport {
    /// `⌈χ/2⌉`, present only when `χ` is exact.
    pub lower_bound: Option<usize>,
    pub chromatic: usize,
    pub chromatic_exact: bool,
    pub upper_bound: usize,
    pub witness: Circuit,
    pub variable_map: Vec<u32>,
}

impl WidthReport {
    pub fn summary(&self) -> String {
        let lower = self.lower_bound.map_or_else(|| "none".to_string(), |l| l.to_string());
        let kind = if self.chromatic_exact { "exact" } else { "greedy" };
        format!("lower={lower} upper={} chromatic={}({kind})", self.upper_bound, self.chromatic)
    }
}

pub fn width_report(f: &Poly) -> Result<WidthReport> {
    width_report_with_limit(f, DEFAULT_EXACT_LIMIT)
}

pub fn width_report_with_limit(f: &Poly, exact_limit: usize) -> Result<WidthReport> {
    let (chromatic, exact) = chromatic_number(&build_hypergraph(f), exact_limit);
    let w = width_heuristic_circuit(f)?;
    Ok(WidthReport {
        lower_bound: exact.then(|| chromatic.div_ceil(2)),
        chromatic,
        chromatic_exact: exact,
        upper_bound: w.circuit.n_qubits(),
        witness: w.circuit,
        variable_map: w.variable_map,
    })
}
