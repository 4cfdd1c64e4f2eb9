//! Qubit-saving circuit construction.
//!
//! Variables are grouped into chains `v1 – v2 – … – vk` along degree-2
//! monomials; a chain lives on one qubit and each consecutive pair becomes an
//! internal H. All other monomials become Z/CZ/CCZ gates placed while every
//! operand variable is the live segment of its qubit. A link is only accepted
//! if no remaining monomial has two variables in the merged chain and the
//! gate schedule stays acyclic.

use std::collections::{BTreeSet, VecDeque};

use crate::circuit::{Circuit, Gate};
use crate::compile::{circuit_to_poly, poly_to_circuit};
use crate::error::{Error, Result};
use crate::f2poly::{Monomial, Poly};

/// A realization of `f` (without its constant) plus where each original
/// variable ended up in the compiled numbering of the circuit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub circuit: Circuit,
    /// `variable_map[i]` is the compiled variable realizing `x_{i+1}`.
    pub variable_map: Vec<u32>,
}

struct Layout<'a> {
    chains: Vec<Vec<u32>>,
    /// Per variable: (chain, position).
    place: Vec<(usize, usize)>,
    links: BTreeSet<Monomial>,
    terms: &'a [Monomial],
}

enum Node {
    /// H on a chain's qubit.
    Hadamard(usize),
    Term(Monomial),
}

impl Layout<'_> {
    fn gates(&self) -> impl Iterator<Item = &Monomial> + '_ {
        self.terms.iter().filter(|m| !self.links.contains(m))
    }

    /// Topological order of H events and gates, if one exists.
    fn schedule(&self) -> Option<Vec<Node>> {
        let mut nodes: Vec<Node> = Vec::new();
        let mut event_id: Vec<Vec<usize>> = Vec::with_capacity(self.chains.len());
        for (c, chain) in self.chains.iter().enumerate() {
            let ids = (1..chain.len())
                .map(|_| {
                    nodes.push(Node::Hadamard(c));
                    nodes.len() - 1
                })
                .collect();
            event_id.push(ids);
        }
        let mut succ: Vec<Vec<usize>> = vec![Vec::new(); nodes.len()];
        for ids in &event_id {
            for w in ids.windows(2) {
                succ[w[0]].push(w[1]);
            }
        }
        for m in self.gates() {
            let g = nodes.len();
            nodes.push(Node::Term(*m));
            succ.push(Vec::new());
            for &v in m.vars() {
                let (c, p) = self.place[v as usize - 1];
                if p >= 1 {
                    succ[event_id[c][p - 1]].push(g);
                }
                if p + 1 < self.chains[c].len() {
                    succ[g].push(event_id[c][p]);
                }
            }
        }
        let mut indeg = vec![0usize; nodes.len()];
        for s in succ.iter().flatten() {
            indeg[*s] += 1;
        }
        let mut queue: VecDeque<usize> = (0..nodes.len()).filter(|&i| indeg[i] == 0).collect();
        let mut order = Vec::with_capacity(nodes.len());
        while let Some(i) = queue.pop_front() {
            order.push(i);
            for &s in &succ[i] {
                indeg[s] -= 1;
                if indeg[s] == 0 {
                    queue.push_back(s);
                }
            }
        }
        if order.len() < nodes.len() {
            return None;
        }
        let mut slots: Vec<Option<Node>> = nodes.into_iter().map(Some).collect();
        Some(order.into_iter().map(|i| slots[i].take().expect("visited once")).collect())
    }

    fn reindex(&mut self) {
        for (c, chain) in self.chains.iter().enumerate() {
            for (p, &v) in chain.iter().enumerate() {
                self.place[v as usize - 1] = (c, p);
            }
        }
    }

    /// Tries to join the chains ending in `u` and `w` by the link `u·w`.
    fn try_link(&mut self, u: u32, w: u32) -> bool {
        let (cu, pu) = self.place[u as usize - 1];
        let (cw, pw) = self.place[w as usize - 1];
        let ends = |c: usize, p: usize| p == 0 || p + 1 == self.chains[c].len();
        if cu == cw || !ends(cu, pu) || !ends(cw, pw) {
            return false;
        }
        let mut a = self.chains[cu].clone();
        let mut b = self.chains[cw].clone();
        if pu == 0 {
            a.reverse();
        }
        if pw + 1 == b.len() {
            b.reverse();
        }
        a.extend(b);
        let link = Monomial::pair(u, w);
        let members: BTreeSet<u32> = a.iter().copied().collect();
        let clash = self
            .gates()
            .filter(|m| **m != link)
            .any(|m| m.vars().iter().filter(|v| members.contains(v)).count() >= 2);
        if clash {
            return false;
        }
        let saved = (self.chains.clone(), self.place.clone());
        let (lo, hi) = (cu.min(cw), cu.max(cw));
        self.chains[lo] = a;
        self.chains.remove(hi);
        self.links.insert(link);
        self.reindex();
        if self.schedule().is_some() {
            return true;
        }
        self.links.remove(&link);
        (self.chains, self.place) = saved;
        false
    }
}

fn build(f: &Poly) -> Option<Witness> {
    let n = f.n_vars();
    let terms: Vec<Monomial> = f.terms().copied().collect();
    let mut layout = Layout {
        chains: (1..=n as u32).map(|v| vec![v]).collect(),
        place: (0..n).map(|i| (i, 0)).collect(),
        links: BTreeSet::new(),
        terms: &terms,
    };
    for m in f.terms_of_degree(2) {
        layout.try_link(m.vars()[0], m.vars()[1]);
    }
    let order = layout.schedule()?;
    let mut c = Circuit::new(layout.chains.len()).ok()?;
    for node in order {
        let g = match node {
            Node::Hadamard(q) => Gate::H(q),
            Node::Term(m) => {
                let q: Vec<usize> = m.vars().iter().map(|&v| layout.place[v as usize - 1].0).collect();
                match q[..] {
                    [a] => Gate::Z(a),
                    [a, b] => Gate::CZ(a, b),
                    [a, b, t] => Gate::CCZ(a, b, t),
                    _ => unreachable!(),
                }
            }
        };
        c.push(g).ok()?;
    }
    let compiled = circuit_to_poly(&c).ok()?;
    let map: Vec<u32> = (0..n)
        .map(|i| {
            let (q, p) = layout.place[i];
            compiled.segments(q)[p]
        })
        .collect();
    let renamed = f.without_constant().rename(&map, compiled.n_vars()).ok()?;
    (renamed == *compiled.poly()).then_some(Witness { circuit: c, variable_map: map })
}

/// A circuit whose compiled polynomial is `f` without its constant, up to the
/// returned variable bijection. Falls back to one qubit per variable.
pub fn width_heuristic_circuit(f: &Poly) -> Result<Witness> {
    if f.degree() > 3 {
        return Err(Error::DegreeTooHigh { degree: f.degree(), max: 3 });
    }
    if f.n_vars() == 0 {
        return Err(Error::Precondition("a circuit needs at least one variable".into()));
    }
    if let Some(w) = build(&f.without_constant()) {
        return Ok(w);
    }
    let (circuit, _) = poly_to_circuit(&f.without_constant())?;
    Ok(Witness { circuit, variable_map: (1..=f.n_vars() as u32).collect() })
}
