//! Interaction hypergraphs and their chromatic number.

use crate::f2poly::Poly;

/// Vertices are 0-based (`x_{v+1}` ↦ `v`); edges are sorted vertex lists of
/// size 2 or 3.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypergraph {
    n_vertices: usize,
    edges: Vec<Vec<usize>>,
}

impl Hypergraph {
    pub fn new(n_vertices: usize, edges: Vec<Vec<usize>>) -> crate::Result<Self> {
        let mut edges = edges;
        for e in edges.iter_mut() {
            e.sort_unstable();
            e.dedup();
            if e.len() < 2 || e.iter().any(|&v| v >= n_vertices) {
                return Err(crate::Error::Precondition(format!("invalid hyperedge {e:?}")));
            }
        }
        Ok(Hypergraph { n_vertices, edges })
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn is_proper(&self, colors: &[usize]) -> bool {
        self.edges.iter().all(|e| e.iter().any(|&v| colors[v] != colors[e[0]]))
    }
}

/// One hyperedge per monomial of degree 2 or 3.
pub fn build_hypergraph(f: &Poly) -> Hypergraph {
    let edges = f
        .terms()
        .filter(|m| m.degree() >= 2)
        .map(|m| m.vars().iter().map(|&v| v as usize - 1).collect())
        .collect();
    Hypergraph { n_vertices: f.n_vars(), edges }
}

pub const DEFAULT_EXACT_LIMIT: usize = 16;

fn incident(g: &Hypergraph) -> Vec<Vec<usize>> {
    let mut inc = vec![Vec::new(); g.n_vertices];
    for (i, e) in g.edges.iter().enumerate() {
        for &v in e {
            inc[v].push(i);
        }
    }
    inc
}

/// First-fit coloring in order of descending degree. Returns the colors.
pub fn greedy_coloring(g: &Hypergraph) -> Vec<usize> {
    let inc = incident(g);
    let mut order: Vec<usize> = (0..g.n_vertices).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(inc[v].len()), v));
    let mut colors: Vec<Option<usize>> = vec![None; g.n_vertices];
    for v in order {
        let clashes = |c: usize| {
            inc[v].iter().any(|&e| g.edges[e].iter().all(|&u| u == v || colors[u] == Some(c)))
        };
        let c = (0..).find(|&c| !clashes(c)).expect("some color is free");
        colors[v] = Some(c);
    }
    colors.into_iter().map(|c| c.expect("all colored")).collect()
}

fn count_colors(colors: &[usize]) -> usize {
    colors.iter().max().map_or(0, |m| m + 1)
}

/// Backtracking search for a proper coloring with `k` colors, vertices in
/// index order; a new color is only opened as the next unused one.
fn colorable(g: &Hypergraph, k: usize) -> bool {
    let n = g.n_vertices;
    // Edges checked once their largest vertex is colored.
    let mut closing: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, e) in g.edges.iter().enumerate() {
        closing[*e.last().expect("non-empty")].push(i);
    }
    let mut colors = vec![0usize; n];
    fn go(g: &Hypergraph, closing: &[Vec<usize>], colors: &mut [usize], v: usize, used: usize, k: usize) -> bool {
        if v == colors.len() {
            return true;
        }
        for c in 0..k.min(used + 1) {
            colors[v] = c;
            let ok = closing[v].iter().all(|&e| g.edges[e].iter().any(|&u| colors[u] != c));
            if ok && go(g, closing, colors, v + 1, used.max(c + 1), k) {
                return true;
            }
        }
        false
    }
    go(g, &closing, &mut colors, 0, 0, k)
}

/// `(χ, exact)`: exact by backtracking when `n_vertices <= exact_limit`,
/// otherwise the greedy color count (an upper bound).
pub fn chromatic_number(g: &Hypergraph, exact_limit: usize) -> (usize, bool) {
    let greedy = count_colors(&greedy_coloring(g));
    if g.n_vertices > exact_limit {
        return (greedy, false);
    }
    if g.n_vertices == 0 {
        return (0, true);
    }
    let start = if g.edges.is_empty() { 1 } else { 2 };
    let chi = (start..greedy).find(|&k| colorable(g, k)).unwrap_or(greedy);
    (chi, true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[&[usize]]) -> Hypergraph {
        Hypergraph::new(n, edges.iter().map(|e| e.to_vec()).collect()).unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(chromatic_number(&graph(4, &[&[0, 1], &[1, 2], &[2, 3]]), 16), (2, true));
        assert_eq!(chromatic_number(&graph(3, &[&[0, 1], &[1, 2], &[0, 2]]), 16), (3, true));
        assert_eq!(chromatic_number(&graph(3, &[&[0, 1, 2]]), 16), (2, true));
        assert_eq!(chromatic_number(&graph(3, &[]), 16), (1, true));
        let k5: Vec<Vec<usize>> = (0..5).flat_map(|a| (a + 1..5).map(move |b| vec![a, b])).collect();
        assert_eq!(chromatic_number(&Hypergraph::new(5, k5).unwrap(), 16), (5, true));
    }

    #[test]
    fn hypergraph_from_poly() {
        let f = Poly::from_terms(4, [&[1u32, 2][..], &[2, 3, 4], &[1], &[]]).unwrap();
        let g = build_hypergraph(&f);
        assert_eq!(g.edges(), &[vec![0, 1], vec![1, 2, 3]]);
        assert!(build_hypergraph(&Poly::from_terms(2, [&[1u32][..], &[2]]).unwrap()).edges().is_empty());
    }

    #[test]
    fn greedy_is_proper_and_bounds_exact() {
        for seed in 0..60 {
            let f = Poly::random(8, 3, seed);
            let g = build_hypergraph(&f);
            let colors = greedy_coloring(&g);
            assert!(g.is_proper(&colors));
            let (chi, exact) = chromatic_number(&g, 16);
            assert!(exact && chi <= count_colors(&colors));
            assert!(!colorable(&g, chi - 1));
        }
    }

    #[test]
    fn large_graphs_fall_back_to_greedy() {
        let f = Poly::random(20, 2, 1);
        let (chi, exact) = chromatic_number(&build_hypergraph(&f), 16);
        assert!(!exact && chi >= 2);
    }
}
