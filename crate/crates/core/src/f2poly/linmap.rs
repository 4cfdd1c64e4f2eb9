//! Bit-packed vectors and square matrices over GF(2).

use rand::Rng;

use crate::error::{Error, Result};

/// A vector over GF(2), packed 64 coordinates per word.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct F2Vec {
    len: usize,
    words: Vec<u64>,
}

impl F2Vec {
    pub fn zeros(len: usize) -> Self {
        F2Vec { len, words: vec![0; len.div_ceil(64)] }
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    pub fn random<R: Rng + ?Sized>(len: usize, rng: &mut R) -> Self {
        let mut v = Self::zeros(len);
        for w in &mut v.words {
            *w = rng.gen();
        }
        v.mask_tail();
        v
    }

    fn mask_tail(&mut self) {
        let r = self.len % 64;
        if r != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << r) - 1;
            }
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, b: bool) {
        debug_assert!(i < self.len);
        let m = 1u64 << (i % 64);
        if b {
            self.words[i / 64] |= m;
        } else {
            self.words[i / 64] &= !m;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / 64] ^= 1u64 << (i % 64);
    }

    pub fn xor_assign(&mut self, other: &F2Vec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Inner product over GF(2).
    pub fn dot(&self, other: &F2Vec) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones())
            & 1
            == 1
    }

    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let t = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * 64 + t)
                }
            })
        })
    }

    pub fn to_bools(&self) -> Vec<bool> {
        (0..self.len).map(|i| self.get(i)).collect()
    }
}

impl std::fmt::Debug for F2Vec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Row-echelon basis of a subspace of GF(2)^n. Vectors are kept sorted by
/// pivot, the pivot being the lowest set coordinate.
#[derive(Clone, Debug, Default)]
pub struct EchelonBasis {
    rows: Vec<(usize, F2Vec)>,
}

impl EchelonBasis {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn reduce(&self, v: &mut F2Vec) {
        for (p, row) in &self.rows {
            if v.get(*p) {
                v.xor_assign(row);
            }
        }
    }

    pub fn contains(&self, v: &F2Vec) -> bool {
        let mut v = v.clone();
        self.reduce(&mut v);
        v.is_zero()
    }

    /// Adds `v` to the span; returns false if it was already in it.
    pub fn insert(&mut self, mut v: F2Vec) -> bool {
        self.reduce(&mut v);
        match v.first_one() {
            None => false,
            Some(p) => {
                let at = self.rows.partition_point(|(q, _)| *q < p);
                self.rows.insert(at, (p, v));
                true
            }
        }
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.iter().map(|(p, _)| *p)
    }

    pub fn vectors(&self) -> impl Iterator<Item = &F2Vec> {
        self.rows.iter().map(|(_, v)| v)
    }
}

pub fn rank(vectors: &[F2Vec]) -> usize {
    let mut basis = EchelonBasis::new();
    vectors.iter().filter(|v| basis.insert((*v).clone())).count()
}

/// Basis of `{a : e·a = 0 for every equation e}` in GF(2)^n.
pub fn nullspace(equations: &[F2Vec], n: usize) -> Vec<F2Vec> {
    // Reduced row echelon form with pivots on the lowest set coordinate.
    let mut rows: Vec<F2Vec> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    for eq in equations {
        debug_assert_eq!(eq.len(), n);
        let mut v = eq.clone();
        for (row, &p) in rows.iter().zip(&pivots) {
            if v.get(p) {
                v.xor_assign(row);
            }
        }
        if let Some(p) = v.first_one() {
            for row in rows.iter_mut() {
                if row.get(p) {
                    row.xor_assign(&v);
                }
            }
            rows.push(v);
            pivots.push(p);
        }
    }
    let mut is_pivot = vec![false; n];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..n)
        .filter(|&j| !is_pivot[j])
        .map(|free| {
            let mut a = F2Vec::unit(n, free);
            for (row, &p) in rows.iter().zip(&pivots) {
                if row.get(free) {
                    a.set(p, true);
                }
            }
            a
        })
        .collect()
}

/// Unit vectors completing `basis` (assumed independent) to a basis of GF(2)^n.
pub fn complement_units(basis: &[F2Vec], n: usize) -> Vec<F2Vec> {
    let mut ech = EchelonBasis::new();
    for b in basis {
        ech.insert(b.clone());
    }
    let mut out = Vec::with_capacity(n - ech.dim());
    for i in 0..n {
        let e = F2Vec::unit(n, i);
        if ech.insert(e.clone()) {
            out.push(e);
        }
    }
    out
}

/// An invertible linear map on GF(2)^n, stored by columns: column `j` is the
/// image of the `j`-th basis vector, so `(Lx)_i = Σ_j col_j[i]·x_j`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinMap {
    n: usize,
    columns: Vec<F2Vec>,
}

impl LinMap {
    pub fn new(columns: Vec<F2Vec>) -> Result<Self> {
        let n = columns.len();
        for c in &columns {
            if c.len() != n {
                return Err(Error::DimensionMismatch { expected: n, got: c.len() });
            }
        }
        if rank(&columns) != n {
            return Err(Error::SingularMatrix);
        }
        Ok(LinMap { n, columns })
    }

    pub fn identity(n: usize) -> Self {
        LinMap { n, columns: (0..n).map(|j| F2Vec::unit(n, j)).collect() }
    }

    /// Builds the map from its matrix rows: row `i` is the linear form `(Lx)_i`.
    pub fn from_rows(rows: &[F2Vec]) -> Result<Self> {
        let n = rows.len();
        let mut columns = vec![F2Vec::zeros(n); n];
        for (i, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(Error::DimensionMismatch { expected: n, got: r.len() });
            }
            for j in r.iter_ones() {
                columns[j].set(i, true);
            }
        }
        Self::new(columns)
    }

    /// Uniformly random invertible map (rejection sampling; a random square
    /// matrix over GF(2) is invertible with probability above 0.28).
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        loop {
            let columns: Vec<F2Vec> = (0..n).map(|_| F2Vec::random(n, rng)).collect();
            if rank(&columns) == n {
                return LinMap { n, columns };
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn columns(&self) -> &[F2Vec] {
        &self.columns
    }

    /// Row `i` of the matrix, i.e. the coefficients of `(Lx)_i` in `x`.
    pub fn row(&self, i: usize) -> F2Vec {
        let mut r = F2Vec::zeros(self.n);
        for (j, c) in self.columns.iter().enumerate() {
            if c.get(i) {
                r.set(j, true);
            }
        }
        r
    }

    pub fn rows(&self) -> Vec<F2Vec> {
        (0..self.n).map(|i| self.row(i)).collect()
    }

    pub fn apply(&self, x: &F2Vec) -> Result<F2Vec> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, got: x.len() });
        }
        let mut y = F2Vec::zeros(self.n);
        for j in x.iter_ones() {
            y.xor_assign(&self.columns[j]);
        }
        Ok(y)
    }

    /// Parses a matrix file: one row per line as a string of `0`/`1`
    /// characters (whitespace between digits allowed), `#` comments.
    pub fn parse(text: &str) -> Result<Self> {
        let mut rows = Vec::new();
        let mut width = None;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut bits = Vec::new();
            for ch in line.chars().filter(|c| !c.is_whitespace()) {
                match ch {
                    '0' => bits.push(false),
                    '1' => bits.push(true),
                    other => {
                        return Err(Error::parse(lineno + 1, format!("unexpected character {other:?} in matrix row")))
                    }
                }
            }
            match width {
                None => width = Some(bits.len()),
                Some(w) if w != bits.len() => {
                    return Err(Error::parse(lineno + 1, format!("row has {} entries, expected {w}", bits.len())))
                }
                _ => {}
            }
            rows.push(F2Vec::from_bools(&bits));
        }
        if let Some(w) = width {
            if w != rows.len() {
                return Err(Error::parse(0, format!("matrix is {}x{w}, expected square", rows.len())));
            }
        }
        Self::from_rows(&rows)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for r in self.rows() {
            s.push_str(&format!("{r:?}\n"));
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn nullspace_is_annihilated() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 1..20 {
            let eqs: Vec<F2Vec> = (0..n / 2 + 1).map(|_| F2Vec::random(n, &mut rng)).collect();
            let ns = nullspace(&eqs, n);
            assert_eq!(ns.len() + rank(&eqs), n);
            for a in &ns {
                for e in &eqs {
                    assert!(!e.dot(a));
                }
            }
            assert_eq!(rank(&ns), ns.len());
        }
    }

    #[test]
    fn singular_rejected() {
        let c = vec![F2Vec::from_bools(&[true, true]), F2Vec::from_bools(&[true, true])];
        assert_eq!(LinMap::new(c), Err(Error::SingularMatrix));
    }

    #[test]
    fn rows_and_columns_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let l = LinMap::random(9, &mut rng);
        let back = LinMap::from_rows(&l.rows()).unwrap();
        assert_eq!(back, l);
        let x = F2Vec::random(9, &mut rng);
        let y = l.apply(&x).unwrap();
        for i in 0..9 {
            assert_eq!(y.get(i), l.row(i).dot(&x));
        }
    }

    #[test]
    fn parse_matrix_text() {
        let l = LinMap::parse("# swap\n01\n10\n").unwrap();
        assert_eq!(l.row(0), F2Vec::from_bools(&[false, true]));
        assert!(matches!(LinMap::parse("011\n10\n"), Err(Error::Parse { line: 2, .. })));
        assert_eq!(LinMap::parse("11\n11\n"), Err(Error::SingularMatrix));
    }

    #[test]
    fn complement_completes_basis() {
        let b = vec![F2Vec::from_bools(&[true, true, false, false])];
        let c = complement_units(&b, 4);
        assert_eq!(c.len(), 3);
        let mut all = b.clone();
        all.extend(c);
        assert_eq!(rank(&all), 4);
    }
}
