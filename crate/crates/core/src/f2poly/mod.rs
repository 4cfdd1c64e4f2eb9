//! Multilinear polynomials of degree at most three over GF(2), in algebraic
//! normal form, with 1-based variable indices.

mod brute;
mod linmap;
mod text;

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

pub use brute::{gap_bruteforce, gap_bruteforce_limited, DEFAULT_ENUM_LIMIT};
pub use linmap::{complement_units, nullspace, rank, EchelonBasis, F2Vec, LinMap};

pub const MAX_DEGREE: usize = 3;

/// A product of one to three distinct variables, stored sorted.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    vars: [u32; 3],
    len: u8,
}

impl Monomial {
    /// Canonicalizes `vars`: sorts, and collapses repeats (`x·x = x`).
    pub fn new(vars: &[u32]) -> Result<Self> {
        let mut buf: Vec<u32> = vars.to_vec();
        buf.sort_unstable();
        buf.dedup();
        if let Some(&0) = buf.first() {
            return Err(Error::IndexOutOfRange { index: 0, min: 1, max: u32::MAX as usize });
        }
        if buf.is_empty() {
            return Err(Error::Precondition("empty monomial; use the constant term".into()));
        }
        if buf.len() > MAX_DEGREE {
            return Err(Error::DegreeTooHigh { degree: buf.len(), max: MAX_DEGREE });
        }
        let mut v = [0u32; 3];
        v[..buf.len()].copy_from_slice(&buf);
        Ok(Monomial { vars: v, len: buf.len() as u8 })
    }

    pub fn var(v: u32) -> Self {
        assert!(v >= 1);
        Monomial { vars: [v, 0, 0], len: 1 }
    }

    pub fn pair(a: u32, b: u32) -> Self {
        Self::new(&[a, b]).expect("valid pair")
    }

    pub fn vars(&self) -> &[u32] {
        &self.vars[..self.len as usize]
    }

    pub fn degree(&self) -> usize {
        self.len as usize
    }

    pub fn contains(&self, v: u32) -> bool {
        self.vars().contains(&v)
    }

    pub fn max_var(&self) -> u32 {
        self.vars[self.len as usize - 1]
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.vars().cmp(other.vars())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.vars().iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            write!(f, "x{v}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Exact gap `Σ_x (-1)^f(x)` of a polynomial.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct GapValue(BigInt);

impl GapValue {
    pub fn new(v: BigInt) -> Self {
        GapValue(v)
    }

    pub fn zero() -> Self {
        GapValue(BigInt::zero())
    }

    /// `±2^k`.
    pub fn signed_pow2(k: u64, negative: bool) -> Self {
        let v = BigInt::one() << k;
        GapValue(if negative { -v } else { v })
    }

    pub fn value(&self) -> &BigInt {
        &self.0
    }

    pub fn into_inner(self) -> BigInt {
        self.0
    }

    pub fn to_i64(&self) -> Option<i64> {
        self.0.to_i64()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// Multiplies by `2^k`.
    pub fn shl(&self, k: u64) -> Self {
        GapValue(&self.0 << k)
    }

    /// True if the value is 0 or `±2^j` for some `j`.
    pub fn is_zero_or_signed_pow2(&self) -> bool {
        let m = self.0.abs();
        m.is_zero() || (m.trailing_zeros() == Some(m.bits() - 1))
    }
}

impl From<i64> for GapValue {
    fn from(v: i64) -> Self {
        GapValue(BigInt::from(v))
    }
}

impl From<BigInt> for GapValue {
    fn from(v: BigInt) -> Self {
        GapValue(v)
    }
}

impl std::ops::Add for GapValue {
    type Output = GapValue;
    fn add(self, rhs: GapValue) -> GapValue {
        GapValue(self.0 + rhs.0)
    }
}

impl std::ops::Neg for GapValue {
    type Output = GapValue;
    fn neg(self) -> GapValue {
        GapValue(-self.0)
    }
}

impl std::iter::Sum for GapValue {
    fn sum<I: Iterator<Item = GapValue>>(iter: I) -> Self {
        iter.fold(GapValue::zero(), |a, b| a + b)
    }
}

impl fmt::Display for GapValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A polynomial over GF(2) in algebraic normal form on variables
/// `x1..x{n_vars}`. Terms have set semantics: adding a monomial twice removes it.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    n_vars: usize,
    terms: BTreeSet<Monomial>,
    constant: bool,
}

impl Poly {
    pub fn zero(n_vars: usize) -> Self {
        Poly { n_vars, terms: BTreeSet::new(), constant: false }
    }

    /// Builds a polynomial from variable lists; an empty list is the constant 1.
    /// Repeated monomials cancel.
    pub fn from_terms<T: AsRef<[u32]>>(n_vars: usize, terms: impl IntoIterator<Item = T>) -> Result<Self> {
        let mut p = Poly::zero(n_vars);
        for t in terms {
            p.toggle_vars(t.as_ref())?;
        }
        Ok(p)
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn constant(&self) -> bool {
        self.constant
    }

    pub fn set_constant(&mut self, c: bool) {
        self.constant = c;
    }

    pub fn toggle_constant(&mut self) {
        self.constant = !self.constant;
    }

    pub fn terms(&self) -> impl Iterator<Item = &Monomial> + '_ {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.terms.contains(m)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() && !self.constant
    }

    /// Largest monomial degree; 0 for constants.
    pub fn degree(&self) -> usize {
        self.terms.iter().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn terms_of_degree(&self, d: usize) -> impl Iterator<Item = &Monomial> + '_ {
        self.terms.iter().filter(move |m| m.degree() == d)
    }

    /// Number of monomials containing variable `v`.
    pub fn occurrences(&self, v: u32) -> usize {
        self.terms.iter().filter(|m| m.contains(v)).count()
    }

    pub fn toggle(&mut self, m: Monomial) -> Result<()> {
        if m.max_var() as usize > self.n_vars {
            return Err(Error::IndexOutOfRange { index: m.max_var() as usize, min: 1, max: self.n_vars });
        }
        if !self.terms.remove(&m) {
            self.terms.insert(m);
        }
        Ok(())
    }

    pub fn toggle_vars(&mut self, vars: &[u32]) -> Result<()> {
        if vars.is_empty() {
            self.constant = !self.constant;
            Ok(())
        } else {
            self.toggle(Monomial::new(vars)?)
        }
    }

    pub(crate) fn toggle_unchecked(&mut self, m: Monomial) {
        if !self.terms.remove(&m) {
            self.terms.insert(m);
        }
    }

    /// Sum over GF(2).
    pub fn add(&self, other: &Poly) -> Result<Poly> {
        if self.n_vars != other.n_vars {
            return Err(Error::DimensionMismatch { expected: self.n_vars, got: other.n_vars });
        }
        let terms = self.terms.symmetric_difference(&other.terms).copied().collect();
        Ok(Poly { n_vars: self.n_vars, terms, constant: self.constant ^ other.constant })
    }

    pub fn without_constant(&self) -> Poly {
        Poly { constant: false, ..self.clone() }
    }

    /// The same polynomial viewed over `n_vars` variables (`n_vars` must not
    /// drop any used variable).
    pub fn with_n_vars(&self, n_vars: usize) -> Result<Poly> {
        if let Some(m) = self.terms.iter().find(|m| m.max_var() as usize > n_vars) {
            return Err(Error::IndexOutOfRange { index: m.max_var() as usize, min: 1, max: n_vars });
        }
        Ok(Poly { n_vars, ..self.clone() })
    }

    pub fn eval(&self, x: &[bool]) -> Result<bool> {
        if x.len() != self.n_vars {
            return Err(Error::InputShape { expected: self.n_vars, got: x.len() });
        }
        Ok(self.terms.iter().fold(self.constant, |acc, m| {
            acc ^ m.vars().iter().all(|&v| x[v as usize - 1])
        }))
    }

    /// Evaluates at a point packed 64 variables per word (`x_v` is bit `v-1`).
    pub(crate) fn eval_packed(&self, x: &[u64]) -> bool {
        let bit = |v: u32| (x[(v as usize - 1) / 64] >> ((v as usize - 1) % 64)) & 1 == 1;
        self.terms.iter().fold(self.constant, |acc, m| acc ^ m.vars().iter().all(|&v| bit(v)))
    }

    fn check_var(&self, i: u32) -> Result<()> {
        if i == 0 || i as usize > self.n_vars {
            return Err(Error::IndexOutOfRange { index: i as usize, min: 1, max: self.n_vars });
        }
        Ok(())
    }

    /// Fixes `x_i = b`, keeping the ambient variable count (so `x_i` becomes unused).
    pub fn restrict(&self, i: u32, b: bool) -> Result<Poly> {
        self.check_var(i)?;
        let mut out = Poly::zero(self.n_vars);
        out.constant = self.constant;
        for m in &self.terms {
            if !m.contains(i) {
                out.toggle_unchecked(*m);
            } else if b {
                let rest: Vec<u32> = m.vars().iter().copied().filter(|&v| v != i).collect();
                if rest.is_empty() {
                    out.constant = !out.constant;
                } else {
                    out.toggle_unchecked(Monomial::new(&rest)?);
                }
            }
        }
        Ok(out)
    }

    /// Fixes `x_i = b` and removes the variable, renumbering `x_{j>i}` to `x_{j-1}`.
    pub fn restrict_drop(&self, i: u32, b: bool) -> Result<Poly> {
        let r = self.restrict(i, b)?;
        let map: Vec<u32> = (1..=self.n_vars as u32).map(|v| if v > i { v - 1 } else { v }).collect();
        let mut out = Poly::zero(self.n_vars - 1);
        out.constant = r.constant;
        for m in &r.terms {
            let vars: Vec<u32> = m.vars().iter().map(|&v| map[v as usize - 1]).collect();
            out.toggle_unchecked(Monomial::new(&vars)?);
        }
        Ok(out)
    }

    /// Renames variable `v` to `map[v-1]` in a polynomial over `n_vars`
    /// variables. The map must be injective on used variables.
    pub fn rename(&self, map: &[u32], n_vars: usize) -> Result<Poly> {
        if map.len() != self.n_vars {
            return Err(Error::InputShape { expected: self.n_vars, got: map.len() });
        }
        let mut out = Poly::zero(n_vars);
        out.constant = self.constant;
        for m in &self.terms {
            let vars: Vec<u32> = m.vars().iter().map(|&v| map[v as usize - 1]).collect();
            let nm = Monomial::new(&vars)?;
            if nm.degree() != m.degree() {
                return Err(Error::Precondition("renaming is not injective".into()));
            }
            out.toggle(nm)?;
        }
        Ok(out)
    }

    /// Substitutes each variable `x_{i+1}` by the linear form `forms[i]` over
    /// `new_n` variables and expands to multilinear normal form.
    pub(crate) fn substitute_linear(&self, forms: &[F2Vec], new_n: usize) -> Poly {
        debug_assert_eq!(forms.len(), self.n_vars);
        let mut acc: HashSet<Monomial> = HashSet::new();
        let mut constant = self.constant;
        let mut toggle = |vars: &[u32], constant: &mut bool| {
            if vars.is_empty() {
                *constant = !*constant;
            } else {
                let m = Monomial::new(vars).expect("at most three variables");
                if !acc.remove(&m) {
                    acc.insert(m);
                }
            }
        };
        let ones = |i: u32| -> Vec<u32> { forms[i as usize - 1].iter_ones().map(|j| j as u32 + 1).collect() };
        for m in &self.terms {
            match *m.vars() {
                [a] => {
                    for u in ones(a) {
                        toggle(&[u], &mut constant);
                    }
                }
                [a, b] => {
                    let (ua, ub) = (ones(a), ones(b));
                    for &u in &ua {
                        for &v in &ub {
                            toggle(&[u, v], &mut constant);
                        }
                    }
                }
                [a, b, c] => {
                    let (ua, ub, uc) = (ones(a), ones(b), ones(c));
                    for &u in &ua {
                        for &v in &ub {
                            for &w in &uc {
                                toggle(&[u, v, w], &mut constant);
                            }
                        }
                    }
                }
                _ => unreachable!(),
            }
        }
        Poly { n_vars: new_n, terms: acc.into_iter().collect(), constant }
    }

    /// `f^L(x) = f(Lx)`, expanded to normal form.
    pub fn apply_linear(&self, l: &LinMap) -> Result<Poly> {
        if l.dim() != self.n_vars {
            return Err(Error::DimensionMismatch { expected: self.n_vars, got: l.dim() });
        }
        Ok(self.substitute_linear(&l.rows(), self.n_vars))
    }

    /// Discrete derivative `Δ_a f(x) = f(x ⊕ a) ⊕ f(x)`.
    pub fn derivative(&self, a: &[bool]) -> Result<Poly> {
        if a.len() != self.n_vars {
            return Err(Error::InputShape { expected: self.n_vars, got: a.len() });
        }
        Ok(self.derivative_vec(&F2Vec::from_bools(a)))
    }

    pub(crate) fn derivative_vec(&self, a: &F2Vec) -> Poly {
        let mut out = Poly::zero(self.n_vars);
        let mut sub: Vec<u32> = Vec::with_capacity(3);
        for m in &self.terms {
            let vars = m.vars();
            let d = vars.len();
            // Every proper subset U of the monomial whose complement lies in supp(a).
            for mask in 0..(1u32 << d) - 1 {
                let shifted = (0..d).all(|k| mask >> k & 1 == 1 || a.get(vars[k] as usize - 1));
                if !shifted {
                    continue;
                }
                sub.clear();
                sub.extend((0..d).filter(|k| mask >> k & 1 == 1).map(|k| vars[k]));
                if sub.is_empty() {
                    out.constant = !out.constant;
                } else {
                    out.toggle_unchecked(Monomial::new(&sub).expect("subset"));
                }
            }
        }
        out
    }

    /// Random polynomial: the constant and each monomial of degree
    /// `1..=max_degree` are included independently with probability 1/2.
    pub fn random(n: usize, max_degree: usize, seed: u64) -> Poly {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Self::random_with(n, max_degree, &mut rng)
    }

    pub fn random_with<R: Rng + ?Sized>(n: usize, max_degree: usize, rng: &mut R) -> Poly {
        let max_degree = max_degree.min(MAX_DEGREE);
        let mut p = Poly::zero(n);
        p.constant = rng.gen_bool(0.5);
        let n32 = n as u32;
        for a in 1..=n32 {
            if rng.gen_bool(0.5) {
                p.terms.insert(Monomial::var(a));
            }
            if max_degree < 2 {
                continue;
            }
            for b in a + 1..=n32 {
                if rng.gen_bool(0.5) {
                    p.terms.insert(Monomial::pair(a, b));
                }
                if max_degree < 3 {
                    continue;
                }
                for c in b + 1..=n32 {
                    if rng.gen_bool(0.5) {
                        p.terms.insert(Monomial { vars: [a, b, c], len: 3 });
                    }
                }
            }
        }
        p
    }

    /// Searches for a bijective renaming `σ` with `self(σ-renamed) == other`,
    /// returned as `σ[v-1]` = image of `x_v`. Backtracking with degree-profile
    /// pruning; intended for test-sized polynomials.
    pub fn find_renaming(&self, other: &Poly) -> Option<Vec<u32>> {
        if self.n_vars != other.n_vars || self.constant != other.constant || self.terms.len() != other.terms.len() {
            return None;
        }
        let n = self.n_vars;
        let profile = |p: &Poly, v: u32| -> [usize; 3] {
            let mut c = [0; 3];
            for m in p.terms.iter().filter(|m| m.contains(v)) {
                c[m.degree() - 1] += 1;
            }
            c
        };
        let pa: Vec<[usize; 3]> = (1..=n as u32).map(|v| profile(self, v)).collect();
        let pb: Vec<[usize; 3]> = (1..=n as u32).map(|v| profile(other, v)).collect();
        let mut sa = pa.clone();
        let mut sb = pb.clone();
        sa.sort();
        sb.sort();
        if sa != sb {
            return None;
        }
        // Most constrained variables first.
        let mut order: Vec<u32> = (1..=n as u32).collect();
        order.sort_by_key(|&v| std::cmp::Reverse(pa[v as usize - 1].iter().sum::<usize>()));
        let by_var: Vec<Vec<Monomial>> =
            (1..=n as u32).map(|v| self.terms.iter().filter(|m| m.contains(v)).copied().collect()).collect();

        struct Search<'a> {
            a: &'a Poly,
            b: &'a Poly,
            pa: &'a [[usize; 3]],
            pb: &'a [[usize; 3]],
            order: &'a [u32],
            by_var: &'a [Vec<Monomial>],
            map: Vec<u32>,
            used: Vec<bool>,
            pos: Vec<usize>,
        }
        impl Search<'_> {
            fn consistent(&self, v: u32) -> bool {
                let vpos = self.pos[v as usize - 1];
                self.by_var[v as usize - 1].iter().all(|m| {
                    // Check a monomial once all of its variables are mapped.
                    if m.vars().iter().any(|&u| self.map[u as usize - 1] == 0 || self.pos[u as usize - 1] > vpos) {
                        return true;
                    }
                    let img: Vec<u32> = m.vars().iter().map(|&u| self.map[u as usize - 1]).collect();
                    self.b.contains(&Monomial::new(&img).expect("injective"))
                })
            }
            fn go(&mut self, depth: usize) -> bool {
                if depth == self.order.len() {
                    return true;
                }
                let v = self.order[depth];
                for t in 1..=self.a.n_vars as u32 {
                    if self.used[t as usize - 1] || self.pa[v as usize - 1] != self.pb[t as usize - 1] {
                        continue;
                    }
                    self.map[v as usize - 1] = t;
                    self.used[t as usize - 1] = true;
                    if self.consistent(v) && self.go(depth + 1) {
                        return true;
                    }
                    self.used[t as usize - 1] = false;
                    self.map[v as usize - 1] = 0;
                }
                false
            }
        }
        let mut pos = vec![0; n];
        for (i, &v) in order.iter().enumerate() {
            pos[v as usize - 1] = i;
        }
        let mut s = Search {
            a: self,
            b: other,
            pa: &pa,
            pb: &pb,
            order: &order,
            by_var: &by_var,
            map: vec![0; n],
            used: vec![false; n],
            pos,
        };
        if s.go(0) {
            Some(s.map)
        } else {
            None
        }
    }

    pub fn is_renaming_of(&self, other: &Poly) -> bool {
        self.find_renaming(other).is_some()
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for m in &self.terms {
            if !first {
                f.write_str(" + ")?;
            }
            write!(f, "{m}")?;
            first = false;
        }
        if self.constant {
            if !first {
                f.write_str(" + ")?;
            }
            f.write_str("1")?;
        } else if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[n={}]({self})", self.n_vars)
    }
}
