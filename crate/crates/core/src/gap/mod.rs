//! Gap engines: exact algorithms for `gap(f) = Σ_x (-1)^f(x)` and a
//! Monte Carlo estimator.

mod hitting;
mod minimize;
mod monte_carlo;
mod quadratic;
mod reduce;

use std::fmt;
use std::str::FromStr;

pub use hitting::{find_hitting_set, gap_hitting, greedy_hitting_set, HittingSet};
pub use minimize::{
    candidate_directions, gap_from_minimization, gap_via_minimization, invariance_space, minimized_poly,
    MinimizationResult,
};
pub use monte_carlo::{gap_monte_carlo, hoeffding_samples, GapEstimate};
pub use quadratic::gap_quadratic;
pub use reduce::{reduce, Reduction};

use crate::error::{Error, Result};
use crate::f2poly::{gap_bruteforce_limited, GapValue, Poly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Engine {
    #[default]
    Auto,
    Brute,
    Quadratic,
    Hitting,
    Minimize,
}

impl Engine {
    pub const ALL: [Engine; 5] = [Engine::Auto, Engine::Brute, Engine::Quadratic, Engine::Hitting, Engine::Minimize];

    pub fn name(self) -> &'static str {
        match self {
            Engine::Auto => "auto",
            Engine::Brute => "brute",
            Engine::Quadratic => "quadratic",
            Engine::Hitting => "hitting",
            Engine::Minimize => "minimize",
        }
    }
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Engine {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Engine::ALL
            .into_iter()
            .find(|e| e.name() == s)
            .ok_or_else(|| Error::Precondition(format!("unknown engine `{s}`")))
    }
}

/// Engine selection and resource limits for exact gap computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapOptions {
    pub engine: Engine,
    /// log2 of the largest admissible operation count.
    pub budget_log2: u32,
    /// Largest candidate space dimension the minimization engine enumerates.
    pub enum_limit: usize,
    /// Work limit for the exact hitting-set search, in monomial scans.
    pub hitting_search_work: u64,
}

impl Default for GapOptions {
    fn default() -> Self {
        GapOptions { engine: Engine::Auto, budget_log2: 30, enum_limit: 20, hitting_search_work: 20_000_000 }
    }
}

impl GapOptions {
    pub fn with_engine(engine: Engine) -> Self {
        GapOptions { engine, ..Default::default() }
    }

    pub fn gap(&self, f: &Poly) -> Result<GapValue> {
        self.gap_explained(f).map(|(g, _)| g)
    }

    /// The gap together with the engine that produced it.
    pub fn gap_explained(&self, f: &Poly) -> Result<(GapValue, Engine)> {
        let b = self.budget_log2;
        match self.engine {
            Engine::Auto => gap_auto(f, self),
            Engine::Brute => Ok((gap_bruteforce_limited(f, b as usize)?, Engine::Brute)),
            Engine::Quadratic => Ok((gap_quadratic(f)?, Engine::Quadratic)),
            Engine::Hitting => {
                let s = find_hitting_set(f, self.hitting_search_work);
                Ok((gap_hitting(f, &s, b)?, Engine::Hitting))
            }
            Engine::Minimize => Ok((gap_via_minimization(f, self.enum_limit, b)?, Engine::Minimize)),
        }
    }
}

/// Exact gap with automatic engine choice: degree-2 polynomials go to the
/// quadratic engine; otherwise the polynomial is first simplified by pair
/// elimination and the cheapest exact engine within budget is used.
pub fn gap_auto(f: &Poly, opts: &GapOptions) -> Result<(GapValue, Engine)> {
    if f.degree() <= 2 {
        return Ok((gap_quadratic(f)?, Engine::Quadratic));
    }
    let (g, shift) = match reduce(f) {
        Reduction::Balanced => return Ok((GapValue::zero(), Engine::Quadratic)),
        Reduction::Scaled { poly, shift } => (poly, shift),
    };
    if g.degree() <= 2 {
        return Ok((gap_quadratic(&g)?.shl(shift), Engine::Quadratic));
    }

    let budget = opts.budget_log2 as f64;
    let n = g.n_vars();
    let hs = find_hitting_set(&g, opts.hitting_search_work);
    let cand_dim = candidate_directions(&g).len();
    let mut options = vec![(hitting::hitting_cost_log2(hs.len(), n), Engine::Hitting), (n as f64, Engine::Brute)];
    if cand_dim <= opts.enum_limit {
        let terms = (g.term_count().max(2) as f64).log2();
        options.push(((cand_dim as f64 + terms).max((n - cand_dim) as f64), Engine::Minimize));
    }
    options.sort_by(|a, b| a.0.total_cmp(&b.0));
    let cheapest = options[0];

    for &(_, engine) in options.iter().filter(|o| o.0 <= budget) {
        let r = match engine {
            Engine::Hitting => gap_hitting(&g, &hs, opts.budget_log2),
            Engine::Brute => gap_bruteforce_limited(&g, opts.budget_log2 as usize),
            Engine::Minimize => gap_via_minimization(&g, opts.enum_limit, opts.budget_log2),
            _ => unreachable!(),
        };
        match r {
            Ok(v) => return Ok((v.shl(shift), engine)),
            Err(Error::ResourceBudget(_)) | Err(Error::Inconclusive(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::ResourceBudget(format!(
        "cheapest exact engine ({}) needs about 2^{:.1} operations on {} variables after simplification, \
         budget is 2^{}; raise the budget or use the Monte Carlo estimate",
        cheapest.1, cheapest.0, n, opts.budget_log2
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::f2poly::gap_bruteforce;

    #[test]
    fn engines_agree() {
        for seed in 0..150 {
            let n = 3 + (seed % 12) as usize;
            let f = Poly::random(n, 3, seed);
            let want = gap_bruteforce(&f).unwrap();
            for e in [Engine::Auto, Engine::Brute, Engine::Hitting] {
                assert_eq!(GapOptions::with_engine(e).gap(&f).unwrap(), want, "{e} {f:?}");
            }
        }
    }

    #[test]
    fn star_uses_hitting_set() {
        let mut f = Poly::zero(30);
        let mut count = 0;
        'outer: for i in 2..=30u32 {
            for j in i + 1..=30 {
                f.toggle_vars(&[1, i, j]).unwrap();
                count += 1;
                if count == 40 {
                    break 'outer;
                }
            }
        }
        f.toggle_vars(&[2, 3]).unwrap();
        let (g, engine) = GapOptions::default().gap_explained(&f).unwrap();
        assert!(engine == Engine::Hitting || engine == Engine::Quadratic || engine == Engine::Minimize);
        let s = find_hitting_set(&f, 10_000);
        assert_eq!(g, gap_hitting(&f, &s, 40).unwrap());
    }

    #[test]
    fn over_budget_reports() {
        let f = Poly::random(40, 3, 5);
        let opts = GapOptions { budget_log2: 12, ..Default::default() };
        assert!(matches!(opts.gap(&f), Err(Error::ResourceBudget(_))));
    }

    #[test]
    fn engine_names_round_trip() {
        for e in Engine::ALL {
            assert_eq!(e.name().parse::<Engine>().unwrap(), e);
        }
    }
}
