//! Exact simplifications applied before choosing an engine.
//!
//! If `x_a` occurs in no cubic monomial and `x_a x_b` is present, then
//! `f = x_a x_b + x_a A + x_b B + C` with `A` affine and `deg B <= 2`, and
//! `gap(f) = 2 · gap(A·B + C)` with `A·B + C` still cubic. A variable whose
//! only monomial is `x_a` itself makes `f` balanced. Unused variables are
//! dropped, each contributing a factor 2.

use crate::f2poly::{GapValue, Monomial, Poly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reduction {
    Balanced,
    /// `gap(f) = gap(poly) · 2^shift`.
    Scaled { poly: Poly, shift: u64 },
}

impl Reduction {
    pub fn finish(&self, inner: impl FnOnce(&Poly) -> crate::Result<GapValue>) -> crate::Result<GapValue> {
        match self {
            Reduction::Balanced => Ok(GapValue::zero()),
            Reduction::Scaled { poly, shift } => Ok(inner(poly)?.shl(*shift)),
        }
    }
}

struct VarInfo {
    in_cubic: bool,
    terms: usize,
    partner: Option<u32>,
}

fn scan(f: &Poly) -> Vec<VarInfo> {
    let mut info: Vec<VarInfo> =
        (0..=f.n_vars()).map(|_| VarInfo { in_cubic: false, terms: 0, partner: None }).collect();
    for m in f.terms() {
        for &v in m.vars() {
            let e = &mut info[v as usize];
            e.terms += 1;
            match *m.vars() {
                [_, _, _] => e.in_cubic = true,
                [a, b] => {
                    let other = if a == v { b } else { a };
                    if e.partner.is_none() {
                        e.partner = Some(other);
                    }
                }
                _ => {}
            }
        }
    }
    info
}

/// Monomials containing `v`, with `v` removed (`None` for `x_v` itself).
fn cofactor(f: &Poly, v: u32, skip: &Monomial) -> Vec<Option<Monomial>> {
    f.terms()
        .filter(|m| m.contains(v) && *m != skip)
        .map(|m| {
            let rest: Vec<u32> = m.vars().iter().copied().filter(|&u| u != v).collect();
            if rest.is_empty() {
                None
            } else {
                Some(Monomial::new(&rest).expect("sub-monomial"))
            }
        })
        .collect()
}

fn eliminate_pair(f: &Poly, a: u32, b: u32) -> Poly {
    let ab = Monomial::pair(a, b);
    let ca = cofactor(f, a, &ab);
    let cb = cofactor(f, b, &ab);
    let mut out = Poly::zero(f.n_vars());
    out.set_constant(f.constant());
    for m in f.terms().filter(|m| !m.contains(a) && !m.contains(b)) {
        out.toggle_unchecked(*m);
    }
    for x in &ca {
        for y in &cb {
            let mut vars: Vec<u32> = Vec::with_capacity(3);
            vars.extend(x.iter().flat_map(|m| m.vars().iter().copied()));
            vars.extend(y.iter().flat_map(|m| m.vars().iter().copied()));
            if vars.is_empty() {
                out.toggle_constant();
            } else {
                out.toggle_unchecked(Monomial::new(&vars).expect("degree at most three"));
            }
        }
    }
    out
}

pub fn reduce(f: &Poly) -> Reduction {
    let mut g = f.clone();
    let mut steps = 0u64;
    loop {
        let info = scan(&g);
        if (1..=g.n_vars() as u32).any(|v| info[v as usize].terms == 1 && g.contains(&Monomial::var(v))) {
            return Reduction::Balanced;
        }
        // Cheapest elimination: fewest product terms.
        let best = (1..=g.n_vars() as u32)
            .filter_map(|a| {
                let e = &info[a as usize];
                let b = e.partner?;
                if e.in_cubic {
                    return None;
                }
                Some((e.terms.saturating_sub(1) * info[b as usize].terms.saturating_sub(1), a, b))
            })
            .min();
        match best {
            Some((_, a, b)) => {
                g = eliminate_pair(&g, a, b);
                steps += 1;
            }
            None => break,
        }
    }
    let info = scan(&g);
    let used: Vec<u32> = (1..=g.n_vars() as u32).filter(|&v| info[v as usize].terms > 0).collect();
    let mut map = vec![0u32; g.n_vars()];
    for (i, &v) in used.iter().enumerate() {
        map[v as usize - 1] = i as u32 + 1;
    }
    let dropped = (g.n_vars() - used.len()) as u64;
    let compact = compact(&g, &map, used.len());
    Reduction::Scaled { poly: compact, shift: dropped - steps }
}

fn compact(g: &Poly, map: &[u32], n: usize) -> Poly {
    let mut out = Poly::zero(n);
    out.set_constant(g.constant());
    for m in g.terms() {
        let vars: Vec<u32> = m.vars().iter().map(|&v| map[v as usize - 1]).collect();
        out.toggle_unchecked(Monomial::new(&vars).expect("renamed monomial"));
    }
    out
}
