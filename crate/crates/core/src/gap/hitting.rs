//! Hitting sets for the cubic monomials, and gap computation by branching on
//! them: fixing every variable of a hitting set leaves a degree-2 polynomial.

use rayon::prelude::*;

use super::quadratic::gap_quadratic;
use crate::error::{Error, Result};
use crate::f2poly::{GapValue, Monomial, Poly};

/// A set of variables meeting every degree-3 monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HittingSet {
    /// Sorted 1-based variable indices.
    pub variables: Vec<u32>,
    /// True when the set is a proven minimum.
    pub exact: bool,
}

impl HittingSet {
    pub fn len(&self) -> usize {
        self.variables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.variables.is_empty()
    }

    pub fn hits(&self, f: &Poly) -> bool {
        f.terms_of_degree(3).all(|m| m.vars().iter().any(|v| self.variables.binary_search(v).is_ok()))
    }
}

fn cubic_terms(f: &Poly) -> Vec<[u32; 3]> {
    f.terms_of_degree(3).map(|m| [m.vars()[0], m.vars()[1], m.vars()[2]]).collect()
}

/// Takes all three variables of each uncovered cubic monomial in turn. The
/// chosen monomials are pairwise disjoint, so the result is at most three
/// times the minimum.
pub fn greedy_hitting_set(f: &Poly) -> Vec<u32> {
    let mut chosen = vec![false; f.n_vars() + 1];
    for t in cubic_terms(f) {
        if t.iter().all(|&v| !chosen[v as usize]) {
            for v in t {
                chosen[v as usize] = true;
            }
        }
    }
    (1..=f.n_vars() as u32).filter(|&v| chosen[v as usize]).collect()
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mark {
    Open,
    Taken,
    Banned,
}

struct BranchAndBound<'a> {
    terms: &'a [[u32; 3]],
    marks: Vec<Mark>,
    taken: usize,
    best: Vec<u32>,
    nodes: u64,
    budget: u64,
    aborted: bool,
}

impl BranchAndBound<'_> {
    fn covered(&self, t: &[u32; 3]) -> bool {
        t.iter().any(|&v| self.marks[v as usize] == Mark::Taken)
    }

    /// Size of a greedy packing of disjoint uncovered monomials: each needs
    /// its own element.
    fn packing_bound(&self) -> usize {
        let mut used: Vec<u32> = Vec::new();
        let mut count = 0;
        for t in self.terms.iter().filter(|t| !self.covered(t)) {
            if t.iter().all(|v| !used.contains(v)) {
                used.extend_from_slice(t);
                count += 1;
            }
        }
        count
    }

    fn search(&mut self) {
        self.nodes += self.terms.len() as u64;
        if self.nodes > self.budget {
            self.aborted = true;
            return;
        }
        let Some(t) = self.terms.iter().find(|t| !self.covered(t)).copied() else {
            if self.taken < self.best.len() {
                self.best = (1..self.marks.len() as u32).filter(|&v| self.marks[v as usize] == Mark::Taken).collect();
            }
            return;
        };
        if self.taken + self.packing_bound() >= self.best.len() {
            return;
        }
        // Branch i: take t[i], ban t[..i].
        let mut banned_here = Vec::new();
        for &v in &t {
            if self.aborted {
                break;
            }
            if self.marks[v as usize] != Mark::Open {
                continue;
            }
            self.marks[v as usize] = Mark::Taken;
            self.taken += 1;
            self.search();
            self.taken -= 1;
            self.marks[v as usize] = Mark::Banned;
            banned_here.push(v);
        }
        for v in banned_here {
            self.marks[v as usize] = Mark::Open;
        }
    }
}

/// Greedy 3-approximation refined by branch and bound. `exact_budget` caps
/// the search work, counted in monomial scans; if the search does not finish the best set
/// found so far is returned with `exact = false`.
pub fn find_hitting_set(f: &Poly, exact_budget: u64) -> HittingSet {
    let terms = cubic_terms(f);
    let greedy = greedy_hitting_set(f);
    if terms.is_empty() {
        return HittingSet { variables: Vec::new(), exact: true };
    }
    let mut bb = BranchAndBound {
        terms: &terms,
        marks: vec![Mark::Open; f.n_vars() + 1],
        taken: 0,
        best: greedy,
        nodes: 0,
        budget: exact_budget,
        aborted: false,
    };
    bb.search();
    HittingSet { variables: bb.best, exact: !bb.aborted }
}

/// log2 of the estimated cost `2^|S| · n³`.
pub(crate) fn hitting_cost_log2(set_size: usize, n: usize) -> f64 {
    set_size as f64 + 3.0 * (n.max(2) as f64).log2()
}

/// Sums the degree-2 gaps of all `2^|S|` restrictions of `f` on `S`.
pub fn gap_hitting(f: &Poly, set: &HittingSet, budget_log2: u32) -> Result<GapValue> {
    if !set.hits(f) {
        return Err(Error::Precondition("the variable set does not hit every cubic monomial".into()));
    }
    let s = set.len();
    let cost = hitting_cost_log2(s, f.n_vars());
    if cost > budget_log2 as f64 {
        return Err(Error::ResourceBudget(format!(
            "hitting-set engine needs about 2^{cost:.1} operations, budget is 2^{budget_log2}"
        )));
    }
    let position = |v: u32| set.variables.binary_search(&v).ok();
    // Per monomial: mask of its variables inside S, and the remaining ones.
    let split: Vec<(u64, Vec<u32>)> = f
        .terms()
        .map(|m| {
            let mut mask = 0u64;
            let mut rest = Vec::with_capacity(3);
            for &v in m.vars() {
                match position(v) {
                    Some(i) => mask |= 1 << i,
                    None => rest.push(v),
                }
            }
            (mask, rest)
        })
        .collect();

    // Each restriction keeps the ambient n variables with S unused, which
    // multiplies every branch gap by 2^|S|; divided out once at the end.
    let branch = |assign: u64| -> Result<GapValue> {
        let mut g = Poly::zero(f.n_vars());
        g.set_constant(f.constant());
        for (mask, rest) in &split {
            if assign & mask != *mask {
                continue;
            }
            if rest.is_empty() {
                g.toggle_constant();
            } else {
                g.toggle_unchecked(Monomial::new(rest)?);
            }
        }
        gap_quadratic(&g)
    };
    let parts: Vec<GapValue> = (0..1u64 << s).into_par_iter().map(branch).collect::<Result<_>>()?;
    let total: GapValue = parts.into_iter().sum();
    Ok(GapValue::new(total.value() >> s))
}
