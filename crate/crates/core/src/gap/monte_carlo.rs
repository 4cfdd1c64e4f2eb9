//! Additive-error estimate of the normalized gap `gap(f) / 2^n`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::f2poly::Poly;

const BLOCK: u64 = 1024;

#[derive(Clone, Debug, PartialEq)]
pub struct GapEstimate {
    /// Estimate of `gap(f) / 2^n`, within `epsilon` with probability `1 - delta`.
    pub normalized_estimate: f64,
    pub epsilon: f64,
    pub delta: f64,
    pub samples: u64,
    pub seed: u64,
}

impl GapEstimate {
    /// The estimate scaled back to `gap(f)` for an `n`-variable polynomial.
    pub fn gap_estimate(&self, n_vars: usize) -> f64 {
        self.normalized_estimate * (n_vars as f64).exp2()
    }
}

/// Hoeffding bound for `±1` samples: `⌈2 ln(2/δ) / ε²⌉`.
pub fn hoeffding_samples(epsilon: f64, delta: f64) -> Result<u64> {
    if !(epsilon > 0.0 && epsilon.is_finite()) || !(delta > 0.0 && delta < 1.0) {
        return Err(Error::Precondition(format!(
            "need epsilon > 0 and 0 < delta < 1, got epsilon={epsilon}, delta={delta}"
        )));
    }
    let s = (2.0 * (2.0 / delta).ln() / (epsilon * epsilon)).ceil();
    if s > 1e15 {
        return Err(Error::ResourceBudget(format!("{s:e} samples requested")));
    }
    Ok(s as u64)
}

/// Averages `(-1)^f(x)` over uniform samples. Samples are drawn in fixed
/// blocks, each from its own ChaCha stream, so the result depends only on
/// `seed` and not on the thread count.
pub fn gap_monte_carlo(f: &Poly, epsilon: f64, delta: f64, seed: u64) -> Result<GapEstimate> {
    let samples = hoeffding_samples(epsilon, delta)?;
    let n = f.n_vars();
    let words = n.div_ceil(64);
    let tail = if n.is_multiple_of(64) { u64::MAX } else { (1u64 << (n % 64)) - 1 };
    let blocks = samples.div_ceil(BLOCK);
    let sum: i64 = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(b);
            let count = BLOCK.min(samples - b * BLOCK);
            let mut x = vec![0u64; words];
            let mut acc = 0i64;
            for _ in 0..count {
                for w in x.iter_mut() {
                    *w = rng.gen();
                }
                if let Some(last) = x.last_mut() {
                    *last &= tail;
                }
                acc += if f.eval_packed(&x) { -1 } else { 1 };
            }
            acc
        })
        .sum();
    Ok(GapEstimate { normalized_estimate: sum as f64 / samples as f64, epsilon, delta, samples, seed })
}
