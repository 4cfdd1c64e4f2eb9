use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::circuit_to_poly;
use crate::circuit::{sandwich_measurement, Circuit};
use crate::error::{Error, Result};
use crate::f2poly::{GapValue, Monomial};
use crate::gap::GapOptions;

/// `g · 2^(e)` as an `f64`, tolerating `g` beyond the `f64` range.
fn scaled_to_f64(g: &BigInt, neg_exp_halves: u64) -> f64 {
    if g.is_zero() {
        return 0.0;
    }
    let shift = g.bits().saturating_sub(64);
    let mantissa = (g >> shift).to_f64().unwrap_or(0.0);
    let whole = shift as f64 - (neg_exp_halves / 2) as f64;
    let v = mantissa * whole.exp2();
    if neg_exp_halves % 2 == 1 {
        v * std::f64::consts::FRAC_1_SQRT_2
    } else {
        v
    }
}

/// Exact amplitude `g / 2^(k/2)`.
///
/// Canonical form: `g = 0` with `k = 0`, or factors of 4 moved out of the
/// denominator until `g` is odd or `k < 2`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Amplitude {
    g: BigInt,
    k: u64,
}

impl Amplitude {
    pub fn new(g: BigInt, k: u64) -> Self {
        let mut g = g;
        let mut k = k;
        if g.is_zero() {
            return Amplitude { g, k: 0 };
        }
        let tz = g.trailing_zeros().unwrap_or(0).min(k / 2);
        g >>= tz;
        k -= 2 * tz;
        Amplitude { g, k }
    }

    pub fn from_gap(gap: &GapValue, k: u64) -> Self {
        Self::new(gap.value().clone(), k)
    }

    pub fn numerator(&self) -> &BigInt {
        &self.g
    }

    pub fn exponent(&self) -> u64 {
        self.k
    }

    pub fn to_f64(&self) -> f64 {
        scaled_to_f64(&self.g, self.k)
    }

    /// Exact dyadic value; `None` when `k` is odd (an irrational amplitude).
    pub fn to_dyadic(&self) -> Option<Dyadic> {
        self.k.is_multiple_of(2).then(|| Dyadic::new(self.g.clone(), self.k / 2))
    }
}

impl fmt::Display for Amplitude {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.k {
            0 => write!(f, "{}", self.g),
            k if k % 2 == 0 => write!(f, "{}/2^{}", self.g, k / 2),
            k => write!(f, "{}/2^({k}/2)", self.g),
        }
    }
}

/// Exact rational `num / 2^exp`, reduced.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Dyadic {
    num: BigInt,
    exp: u64,
}

impl Dyadic {
    pub fn new(num: BigInt, exp: u64) -> Self {
        let mut num = num;
        if num.is_zero() {
            return Dyadic { num, exp: 0 };
        }
        let tz = num.trailing_zeros().unwrap_or(0).min(exp);
        num >>= tz;
        Dyadic { num, exp: exp - tz }
    }

    pub fn numerator(&self) -> &BigInt {
        &self.num
    }

    pub fn exponent(&self) -> u64 {
        self.exp
    }

    pub fn to_f64(&self) -> f64 {
        scaled_to_f64(&self.num, 2 * self.exp)
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp == 0 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/2^{}", self.num, self.exp)
        }
    }
}

/// `<0|C|0> = gap(f_C) / 2^(h/2 + ℓ)` for the full circuit `H C' H`.
pub fn amplitude_00(c: &Circuit, opts: &GapOptions) -> Result<Amplitude> {
    let cp = circuit_to_poly(c)?;
    let gap = opts.gap(cp.poly())?;
    Ok(Amplitude::from_gap(&gap, cp.amplitude_exponent()))
}

/// `<x|C|y>` with input basis state `y` and output `x`, via
/// `gap(f_C + L_{x,y})` where `L_{x,y} = Σ y_q·first(q) + Σ x_q·last(q)`.
pub fn amplitude(c: &Circuit, input: &[bool], output: &[bool], opts: &GapOptions) -> Result<Amplitude> {
    let l = c.n_qubits();
    for bits in [input, output] {
        if bits.len() != l {
            return Err(Error::InputShape { expected: l, got: bits.len() });
        }
    }
    let cp = circuit_to_poly(c)?;
    let mut f = cp.poly().clone();
    for q in 0..l {
        if input[q] {
            f.toggle(Monomial::var(cp.first_var(q)))?;
        }
        if output[q] {
            f.toggle(Monomial::var(cp.last_var(q)))?;
        }
    }
    let gap = opts.gap(&f)?;
    Ok(Amplitude::from_gap(&gap, cp.amplitude_exponent()))
}

/// Exact probability that qubit 0 reads 1 after `H C' H` acts on `|0>`:
/// `(1 - a) / 2` with `a = <0|sandwich|0>`.
pub fn meas_prob_first_qubit(c: &Circuit, opts: &GapOptions) -> Result<Dyadic> {
    let a = amplitude_00(&sandwich_measurement(c)?, opts)?;
    let d = a
        .to_dyadic()
        .ok_or_else(|| Error::Precondition("measurement amplitude has an odd exponent".into()))?;
    // (1 - num/2^e) / 2 = (2^e - num) / 2^(e+1)
    let one = BigInt::one() << d.exponent();
    let p = Dyadic::new(one - d.numerator(), d.exponent() + 1);
    debug_assert!(!p.numerator().is_negative());
    debug_assert!(p.numerator() <= &(BigInt::one() << p.exponent()));
    Ok(p)
}

// Integer helpers shared with the SAT pipeline.
pub(crate) fn exact_div_pow2(v: &BigInt, k: u64) -> Option<BigInt> {
    if v.is_zero() {
        return Some(BigInt::zero());
    }
    let tz = v.trailing_zeros().unwrap_or(0);
    (tz >= k).then(|| v >> k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::Gate::*;

    fn opts() -> GapOptions {
        GapOptions::default()
    }

    fn circ(n: usize, gates: &[crate::Gate]) -> Circuit {
        Circuit::from_gates(n, gates.iter().copied()).unwrap()
    }

    #[test]
    fn canonical_form() {
        let a = Amplitude::new(BigInt::from(16), 10);
        assert_eq!((a.numerator(), a.exponent()), (&BigInt::from(1), 2));
        assert_eq!(a.to_string(), "1/2^1");
        let b = Amplitude::new(BigInt::from(2), 3);
        assert_eq!((b.numerator(), b.exponent()), (&BigInt::from(1), 1));
        assert_eq!(b.to_string(), "1/2^(1/2)");
        assert_eq!(Amplitude::new(BigInt::from(0), 7).exponent(), 0);
        assert_eq!(Amplitude::new(BigInt::from(-4), 0).to_string(), "-4");
        assert!((b.to_f64() - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn three_qubit_amplitude_is_half() {
        let c = circ(3, &[H(0), H(2), CZ(0, 1), H(1), Z(2), CCZ(0, 1, 2), H(0)]);
        let a = amplitude_00(&c, &opts()).unwrap();
        assert_eq!(a, Amplitude::new(BigInt::from(1), 2));
    }

    #[test]
    fn small_amplitudes() {
        let a = amplitude_00(&circ(1, &[H(0)]), &opts()).unwrap();
        assert_eq!(a, Amplitude::new(BigInt::from(1), 1));
        assert_eq!(amplitude_00(&circ(1, &[]), &opts()).unwrap(), Amplitude::new(BigInt::from(1), 0));

        let h = circ(1, &[H(0)]);
        let a10 = amplitude(&h, &[false], &[true], &opts()).unwrap();
        assert_eq!(a10, Amplitude::new(BigInt::from(1), 1));
        let a11 = amplitude(&h, &[true], &[true], &opts()).unwrap();
        assert_eq!(a11, Amplitude::new(BigInt::from(-1), 1));
        assert!(amplitude(&h, &[true, false], &[true], &opts()).is_err());
    }

    #[test]
    fn measurement_probabilities() {
        assert_eq!(meas_prob_first_qubit(&circ(1, &[]), &opts()).unwrap().to_string(), "0");
        assert_eq!(meas_prob_first_qubit(&circ(1, &[Z(0)]), &opts()).unwrap().to_string(), "1");
        assert_eq!(meas_prob_first_qubit(&circ(1, &[H(0)]), &opts()).unwrap().to_string(), "1/2^1");
    }

    #[test]
    fn div_pow2() {
        assert_eq!(exact_div_pow2(&BigInt::from(12), 2), Some(BigInt::from(3)));
        assert_eq!(exact_div_pow2(&BigInt::from(12), 3), None);
    }
}
