//! Exhaustive gap evaluation.
//!
//! The cube is split into a high part enumerated one point at a time and a low
//! block of up to 2^16 points. For each high assignment the restriction of `f`
//! to the low block is written as an ANF coefficient table and turned into its
//! truth table by the GF(2) Möbius transform on packed words.

use num_bigint::BigInt;
use rayon::prelude::*;

use super::{GapValue, Poly};
use crate::error::{Error, Result};

/// Default cap on `n_vars` for exhaustive enumeration.
pub const DEFAULT_ENUM_LIMIT: usize = 30;

const HARD_LIMIT: usize = 62;
const LOW_BITS: usize = 16;

// Positions with bit j of the index clear, for in-word transform levels.
const LEVEL_MASKS: [u64; 6] = [
    0x5555_5555_5555_5555,
    0x3333_3333_3333_3333,
    0x0f0f_0f0f_0f0f_0f0f,
    0x00ff_00ff_00ff_00ff,
    0x0000_ffff_0000_ffff,
    0x0000_0000_ffff_ffff,
];

pub fn gap_bruteforce(f: &Poly) -> Result<GapValue> {
    gap_bruteforce_limited(f, DEFAULT_ENUM_LIMIT)
}

/// `Σ_x (-1)^f(x)` by enumerating all `2^n` points; fails if `n > limit`.
pub fn gap_bruteforce_limited(f: &Poly, limit: usize) -> Result<GapValue> {
    let n = f.n_vars();
    if n > limit.min(HARD_LIMIT) {
        return Err(Error::ResourceBudget(format!(
            "brute force over {n} variables exceeds the enumeration limit of {}",
            limit.min(HARD_LIMIT)
        )));
    }
    let k = n.min(LOW_BITS);
    let high = n - k;
    let words = (1usize << k).div_ceil(64);
    let valid_mask = if k >= 6 { u64::MAX } else { (1u64 << (1u32 << k)) - 1 };

    // (high-variable mask, low-block ANF index) per monomial.
    let terms: Vec<(u64, usize)> = f
        .terms()
        .map(|m| {
            let (mut hi, mut lo) = (0u64, 0usize);
            for &v in m.vars() {
                let b = v as usize - 1;
                if b < k {
                    lo |= 1 << b;
                } else {
                    hi |= 1 << (b - k);
                }
            }
            (hi, lo)
        })
        .collect();

    let block_gap = |table: &mut Vec<u64>, hi: u64| -> i64 {
        table.iter_mut().for_each(|w| *w = 0);
        if f.constant() {
            table[0] ^= 1;
        }
        for &(hm, lo) in &terms {
            if hi & hm == hm {
                table[lo / 64] ^= 1 << (lo % 64);
            }
        }
        mobius(table, k);
        let ones: u64 = table.iter().map(|w| (w & valid_mask).count_ones() as u64).sum();
        (1i64 << k) - 2 * ones as i64
    };

    let total: i64 = if high == 0 {
        block_gap(&mut vec![0u64; words], 0)
    } else {
        (0..1u64 << high)
            .into_par_iter()
            .map_init(|| vec![0u64; words], |table, hi| block_gap(table, hi))
            .sum()
    };
    Ok(GapValue::new(BigInt::from(total)))
}

/// In-place ANF → truth-table transform over a `2^k`-entry bit table.
fn mobius(table: &mut [u64], k: usize) {
    for (j, &mask) in LEVEL_MASKS.iter().enumerate().take(k.min(6)) {
        let s = 1u32 << j;
        for w in table.iter_mut() {
            *w ^= (*w & mask) << s;
        }
    }
    for j in 6..k {
        let stride = 1usize << (j - 6);
        for base in (0..table.len()).step_by(2 * stride) {
            for i in base..base + stride {
                table[i + stride] ^= table[i];
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // Direct sum over eval, independent of the block/transform path.
    fn naive_gap(f: &Poly) -> i64 {
        let n = f.n_vars();
        (0..1u64 << n)
            .map(|x| {
                let bits: Vec<bool> = (0..n).map(|i| x >> i & 1 == 1).collect();
                if f.eval(&bits).unwrap() {
                    -1
                } else {
                    1
                }
            })
            .sum()
    }

    fn p(n: usize, terms: &[&[u32]]) -> Poly {
        Poly::from_terms(n, terms.iter().copied()).unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(gap_bruteforce(&Poly::zero(3)).unwrap(), GapValue::from(8));
        assert_eq!(gap_bruteforce(&p(3, &[&[1], &[2], &[3]])).unwrap(), GapValue::from(0));
        assert_eq!(gap_bruteforce(&p(3, &[&[1, 2, 3]])).unwrap(), GapValue::from(6));
        let three_qubit = p(7, &[&[1, 2], &[2, 3], &[4, 5], &[6, 7], &[2, 4], &[2, 5, 7], &[7]]);
        assert_eq!(gap_bruteforce(&three_qubit).unwrap(), GapValue::from(16));
        let mut one = Poly::zero(0);
        one.set_constant(true);
        assert_eq!(gap_bruteforce(&one).unwrap(), GapValue::from(-1));
    }

    #[test]
    fn agrees_with_naive_sum() {
        for n in 0..=18 {
            for seed in 0..3 {
                let f = Poly::random(n, 3, seed * 100 + n as u64);
                assert_eq!(gap_bruteforce(&f).unwrap().to_i64().unwrap(), naive_gap(&f), "n={n}");
            }
        }
    }

    #[test]
    fn limit_enforced() {
        let f = Poly::zero(31);
        assert!(matches!(gap_bruteforce(&f), Err(Error::ResourceBudget(_))));
        assert_eq!(gap_bruteforce_limited(&Poly::zero(20), 20).unwrap(), GapValue::from(1 << 20));
    }
}
