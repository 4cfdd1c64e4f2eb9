//! Variable minimization through the invariance subspace
//! `V = {a : Δ_a f ≡ 0}`.
//!
//! With `L` mapping the first `n - dim V` unit vectors onto a complement of
//! `V` and the rest onto a basis of `V`, `f^L(x) = f(Lx)` only depends on its
//! first `n - dim V` variables. A direction with `Δ_a f ≡ 1` makes `f`
//! balanced, so the gap is 0.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::f2poly::{complement_units, gap_bruteforce_limited, nullspace, EchelonBasis, F2Vec, GapValue, LinMap, Poly};

#[derive(Clone, Debug)]
pub struct MinimizationResult {
    /// Columns: complement of `V` first, then a basis of `V`.
    pub linmap: LinMap,
    /// Number of variables `f^L` depends on.
    pub essential_count: usize,
    pub invariance_dim: usize,
    /// Some `a` with `Δ_a f ≡ 1` exists.
    pub anti_invariant_found: bool,
    pub invariance_basis: Vec<F2Vec>,
}

/// Basis of the space of directions whose derivative has no degree-2 part.
/// Without cubic monomials the degree-1 part is linear in `a` too and is
/// included, which leaves only directions with a constant derivative.
pub fn candidate_directions(f: &Poly) -> Vec<F2Vec> {
    let n = f.n_vars();
    let mut eqs: BTreeMap<(u32, u32), F2Vec> = BTreeMap::new();
    for m in f.terms_of_degree(3) {
        let [a, b, c] = [m.vars()[0], m.vars()[1], m.vars()[2]];
        for (pair, other) in [((b, c), a), ((a, c), b), ((a, b), c)] {
            eqs.entry(pair).or_insert_with(|| F2Vec::zeros(n)).flip(other as usize - 1);
        }
    }
    let mut equations: Vec<F2Vec> = eqs.into_values().collect();
    if f.degree() < 3 {
        let mut lin = vec![F2Vec::zeros(n); n];
        for m in f.terms_of_degree(2) {
            let (a, b) = (m.vars()[0] as usize - 1, m.vars()[1] as usize - 1);
            lin[a].flip(b);
            lin[b].flip(a);
        }
        equations.extend(lin.into_iter().filter(|e| !e.is_zero()));
    }
    nullspace(&equations, n)
}

/// Degree-1 coefficients and constant of `Δ_a f`, assuming its degree-2
/// part vanishes.
fn low_derivative(f: &Poly, a: &F2Vec, lin: &mut F2Vec) -> bool {
    for w in 0..lin.len() {
        lin.set(w, false);
    }
    let mut constant = false;
    let on = |v: u32| a.get(v as usize - 1);
    for m in f.terms() {
        match *m.vars() {
            [i] => constant ^= on(i),
            [i, j] => {
                if on(i) {
                    lin.flip(j as usize - 1);
                }
                if on(j) {
                    lin.flip(i as usize - 1);
                }
                constant ^= on(i) & on(j);
            }
            [i, j, k] => {
                if on(i) & on(j) {
                    lin.flip(k as usize - 1);
                }
                if on(i) & on(k) {
                    lin.flip(j as usize - 1);
                }
                if on(j) & on(k) {
                    lin.flip(i as usize - 1);
                }
                constant ^= on(i) & on(j) & on(k);
            }
            _ => unreachable!(),
        }
    }
    constant
}

/// Enumerates the candidate space (dimension at most `enum_limit`) and keeps
/// the directions with a vanishing derivative.
pub fn invariance_space(f: &Poly, enum_limit: usize) -> Result<MinimizationResult> {
    let n = f.n_vars();
    let cand = candidate_directions(f);
    if cand.len() > enum_limit {
        return Err(Error::Inconclusive(format!(
            "candidate direction space has dimension {}, enumeration limit is {enum_limit}",
            cand.len()
        )));
    }
    let mut basis = EchelonBasis::new();
    let mut members = 1u64;
    let mut anti = false;
    let mut a = F2Vec::zeros(n);
    let mut lin = F2Vec::zeros(n);
    for t in 1u64..1 << cand.len() {
        a.xor_assign(&cand[t.trailing_zeros() as usize]);
        let constant = low_derivative(f, &a, &mut lin);
        if !lin.is_zero() {
            continue;
        }
        if constant {
            anti = true;
        } else {
            members += 1;
            basis.insert(a.clone());
        }
    }
    debug_assert_eq!(members, 1u64 << basis.dim());
    let v_basis: Vec<F2Vec> = basis.vectors().cloned().collect();
    for b in &v_basis {
        if !f.derivative_vec(b).is_zero() {
            return Err(Error::Precondition("invariance check failed".into()));
        }
    }
    let mut columns = complement_units(&v_basis, n);
    let essential = columns.len();
    columns.extend(v_basis.iter().cloned());
    Ok(MinimizationResult {
        linmap: LinMap::new(columns)?,
        essential_count: essential,
        invariance_dim: v_basis.len(),
        anti_invariant_found: anti,
        invariance_basis: v_basis,
    })
}

/// `f^L` restricted to its essential variables.
pub fn minimized_poly(f: &Poly, res: &MinimizationResult) -> Poly {
    let v = res.essential_count;
    let cols = res.linmap.columns();
    let forms: Vec<F2Vec> = (0..f.n_vars())
        .map(|i| {
            let mut form = F2Vec::zeros(v);
            for (j, col) in cols.iter().take(v).enumerate() {
                if col.get(i) {
                    form.set(j, true);
                }
            }
            form
        })
        .collect();
    f.substitute_linear(&forms, v)
}

pub fn gap_from_minimization(f: &Poly, res: &MinimizationResult, budget_log2: u32) -> Result<GapValue> {
    if res.anti_invariant_found {
        return Ok(GapValue::zero());
    }
    let g = minimized_poly(f, res);
    let inner = gap_bruteforce_limited(&g, budget_log2 as usize)?;
    Ok(inner.shl(res.invariance_dim as u64))
}

pub fn gap_via_minimization(f: &Poly, enum_limit: usize, budget_log2: u32) -> Result<GapValue> {
    let res = invariance_space(f, enum_limit)?;
    gap_from_minimization(f, &res, budget_log2)
}
