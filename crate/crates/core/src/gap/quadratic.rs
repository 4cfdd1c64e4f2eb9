//! Exact gap of degree-2 polynomials by pairwise elimination.
//!
//! Pick the lexicographically smallest quadratic monomial `x_a x_b` and write
//! `f = x_a x_b + x_a A + x_b B + C` with `A`, `B` affine and free of
//! `x_a, x_b`. Summing out `x_b` forces `x_a = B`, so
//! `gap(f) = 2 · gap(A·B + C)` over the other `n - 2` variables. When no
//! quadratic term is left the gap is 0 if a linear term remains and
//! `(-1)^c · 2^m` otherwise. Each step costs `O(n²/64)` word operations.

use crate::error::{Error, Result};
use crate::f2poly::{F2Vec, GapValue, Poly};

pub fn gap_quadratic(f: &Poly) -> Result<GapValue> {
    if f.degree() > 2 {
        return Err(Error::WrongEngine(format!(
            "the quadratic engine needs degree <= 2, polynomial has degree {}",
            f.degree()
        )));
    }
    let n = f.n_vars();
    let mut adj = vec![F2Vec::zeros(n); n];
    let mut lin = F2Vec::zeros(n);
    let mut constant = f.constant();
    for m in f.terms() {
        match *m.vars() {
            [a] => lin.flip(a as usize - 1),
            [a, b] => {
                let (a, b) = (a as usize - 1, b as usize - 1);
                adj[a].flip(b);
                adj[b].flip(a);
            }
            _ => unreachable!(),
        }
    }

    let mut steps = 0u64;
    let mut a = 0;
    loop {
        // Rows below `a` are empty and stay empty: their vertices have no
        // neighbours, so they never occur in A or B.
        while a < n && adj[a].is_zero() {
            a += 1;
        }
        if a == n {
            break;
        }
        let b = adj[a].first_one().expect("non-empty row");
        let mut av = std::mem::replace(&mut adj[a], F2Vec::zeros(n));
        let mut bv = std::mem::replace(&mut adj[b], F2Vec::zeros(n));
        av.set(b, false);
        bv.set(a, false);
        for i in av.iter_ones() {
            adj[i].set(a, false);
        }
        for j in bv.iter_ones() {
            adj[j].set(b, false);
        }
        let (alpha0, beta0) = (lin.get(a), lin.get(b));
        lin.set(a, false);
        lin.set(b, false);

        // A·B = α0β0 + α0·B + β0·A + Σ α_i β_j x_i x_j, with x_i² = x_i.
        constant ^= alpha0 & beta0;
        if alpha0 {
            lin.xor_assign(&bv);
        }
        if beta0 {
            lin.xor_assign(&av);
        }
        for i in av.iter_ones() {
            adj[i].xor_assign(&bv);
        }
        for j in bv.iter_ones() {
            adj[j].xor_assign(&av);
        }
        // Diagonal entries were toggled twice (cancelled) and belong to `lin`.
        for i in av.iter_ones() {
            if bv.get(i) {
                lin.flip(i);
            }
        }
        steps += 1;
    }

    if !lin.is_zero() {
        return Ok(GapValue::zero());
    }
    let free = n as u64 - 2 * steps;
    Ok(GapValue::signed_pow2(free + steps, constant))
}
