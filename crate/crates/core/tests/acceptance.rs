//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.
//!
//! Run with `cargo test -p polycirc --test acceptance`.

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Signed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use polycirc::circuit::{insert_h_pairs, random_circuit};
use polycirc::compile::{amplitude, amplitude_00, circuit_to_poly, meas_prob_first_qubit};
use polycirc::f2poly::{gap_bruteforce, gap_bruteforce_limited};
use polycirc::gap::{
    find_hitting_set, gap_hitting, gap_monte_carlo, gap_quadratic, gap_via_minimization, invariance_space,
};
use polycirc::oracle::{statevector_amplitude, statevector_prob_first_qubit};
use polycirc::satcount::{count_sat, random_netlist, BoolCircuit};
use polycirc::width::width_report;
use polycirc::{Amplitude, Circuit, GapOptions, LinMap, Poly};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, Option<Duration>);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        // NaN must fail the check.
        #[allow(clippy::neg_cmp_op_on_partial_ord)]
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

const AMP_TOL_FIXTURE: f64 = 1e-12;
const AMP_TOL_RANDOM: f64 = 1e-9;
const PROB_TOL: f64 = 1e-9;
const MC_MAX_FAILURE_RATE: f64 = 0.10;

fn circ(text: &str) -> Circuit {
    Circuit::parse(text).expect("fixture circuit")
}

fn poly(text: &str) -> Poly {
    Poly::parse(text).expect("fixture polynomial")
}

fn three_qubit() -> Circuit {
    circ(include_str!("fixtures/three_qubit.circ"))
}

fn star8() -> Circuit {
    circ(include_str!("fixtures/star8.circ"))
}

fn opts() -> GapOptions {
    GapOptions::default()
}

fn bits(m: usize, n: usize) -> Vec<bool> {
    (0..n).map(|i| m >> i & 1 == 1).collect()
}

/// The seeded circuits shared by the oracle and unitarity checks.
fn random_corpus() -> Vec<Circuit> {
    (0..200u64)
        .map(|seed| random_circuit(1 + (seed % 8) as usize, (seed * 7 % 41) as usize, seed).unwrap())
        .collect()
}

fn three_qubit_fixture() -> Outcome {
    let c = three_qubit();
    let cp = circuit_to_poly(&c).map_err(|e| e.to_string())?;
    let caption = Poly::from_terms(7, [&[1u32, 2][..], &[2, 3], &[4, 5], &[6, 7], &[2, 4], &[2, 5, 7], &[7]]).unwrap();
    ensure!(cp.poly().is_renaming_of(&caption), "compiled {} is not a renaming of {caption}", cp.poly());
    let gap = opts().gap(cp.poly()).map_err(|e| e.to_string())?;
    ensure!(gap.to_i64() == Some(16), "gap = {gap}, expected 16");
    let a = amplitude_00(&c, &opts()).map_err(|e| e.to_string())?;
    ensure!(a == Amplitude::new(BigInt::one(), 2), "amplitude = {a}, expected 1/2");
    Ok(format!("gap={gap} amp={a}"))
}

fn two_var_forms_fixture() -> Outcome {
    let x1x2 = Poly::from_terms(2, [&[1u32, 2]]).unwrap();
    let cases = [
        (circ(include_str!("fixtures/cz.circ")), 0, 2, Amplitude::new(BigInt::one(), 2)),
        (circ(include_str!("fixtures/h.circ")), 1, 1, Amplitude::new(BigInt::one(), 1)),
    ];
    let mut detail = Vec::new();
    for (c, h, l, want) in cases {
        let cp = circuit_to_poly(&c).map_err(|e| e.to_string())?;
        ensure!(cp.poly().is_renaming_of(&x1x2), "compiled {} is not x1*x2", cp.poly());
        ensure!(cp.h() == h && cp.n_qubits() == l, "h={} l={}, expected h={h} l={l}", cp.h(), cp.n_qubits());
        let a = amplitude_00(&c, &opts()).map_err(|e| e.to_string())?;
        ensure!(a == want, "amplitude {a}, expected {want}");
        let sv = statevector_amplitude(&c, &vec![false; l], &vec![false; l]).map_err(|e| e.to_string())?;
        ensure!((a.to_f64() - sv).abs() <= AMP_TOL_FIXTURE, "oracle {sv} vs {}", a.to_f64());
        detail.push(format!("{a}"));
    }
    Ok(detail.join(", "))
}

fn oracle_equivalence() -> Outcome {
    let mut checked = 0usize;
    let mut worst = 0.0f64;
    for (seed, c) in random_corpus().iter().enumerate() {
        let l = c.n_qubits();
        let pairs: Vec<(usize, usize)> =
            if l <= 4 { (0..1 << l).flat_map(|x| (0..1 << l).map(move |y| (x, y))).collect() } else { vec![(0, 0)] };
        for (x, y) in pairs {
            let (input, output) = (bits(y, l), bits(x, l));
            let a = amplitude(c, &input, &output, &opts()).map_err(|e| format!("seed {seed}: {e}"))?;
            let sv = statevector_amplitude(c, &input, &output).unwrap();
            let err = (a.to_f64() - sv).abs();
            worst = worst.max(err);
            ensure!(err <= AMP_TOL_RANDOM, "seed {seed} <{x}|C|{y}>: {a} = {} vs oracle {sv}", a.to_f64());
            checked += 1;
        }
    }
    Ok(format!("{checked} amplitudes, max error {worst:.1e}"))
}

fn degree2_engine() -> Outcome {
    // Every degree-<=2 polynomial on 4 variables: 1 + 4 + 6 coefficient bits.
    let mut monomials: Vec<Vec<u32>> = vec![vec![]];
    monomials.extend((1..=4).map(|v| vec![v]));
    monomials.extend((1..=4u32).flat_map(|a| (a + 1..=4).map(move |b| vec![a, b])));
    let mut count = 0;
    for mask in 0u32..1 << monomials.len() {
        let terms = monomials.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, m)| m.as_slice());
        let f = Poly::from_terms(4, terms).unwrap();
        let q = gap_quadratic(&f).unwrap();
        ensure!(q == gap_bruteforce(&f).unwrap(), "mismatch on {f}");
        ensure!(q.is_zero_or_signed_pow2(), "{q} is not a signed power of two for {f}");
        count += 1;
    }
    for seed in 0..500u64 {
        let f = Poly::random((seed % 21) as usize, 2, seed);
        let q = gap_quadratic(&f).unwrap();
        ensure!(q == gap_bruteforce(&f).unwrap(), "mismatch on random seed {seed}");
        ensure!(q.is_zero_or_signed_pow2(), "{q} is not a signed power of two (seed {seed})");
        count += 1;
    }
    Ok(format!("{count} polynomials"))
}

fn hitting_engine() -> Outcome {
    let mut max_set = 0;
    for seed in 0..300u64 {
        let f = Poly::random(3 + (seed % 16) as usize, 3, 10_000 + seed);
        let s = find_hitting_set(&f, 20_000_000);
        max_set = max_set.max(s.len());
        let g = gap_hitting(&f, &s, 40).map_err(|e| e.to_string())?;
        ensure!(g == gap_bruteforce(&f).unwrap(), "mismatch on seed {seed}");
    }
    let c = star8();
    ensure!(c.len() == 21 && c.n_qubits() == 8, "star fixture has {} gates", c.len());
    let cp = circuit_to_poly(&c).unwrap();
    let s = find_hitting_set(cp.poly(), 1_000_000);
    ensure!(s.len() == 1 && s.exact, "star hitting set {:?}", s.variables);
    let g = gap_hitting(cp.poly(), &s, 30).unwrap();
    let exact = Amplitude::from_gap(&g, cp.amplitude_exponent());
    ensure!(exact == amplitude_00(&c, &opts()).unwrap(), "amplitude pipeline disagrees");
    let sv = statevector_amplitude(&c, &[false; 8], &[false; 8]).unwrap();
    ensure!((exact.to_f64() - sv).abs() <= AMP_TOL_FIXTURE, "star: {} vs oracle {sv}", exact.to_f64());
    let oracle_gap = (sv * 256.0).round() as i64;
    ensure!(g.to_i64() == Some(oracle_gap), "star gap {g} vs oracle {oracle_gap}");
    Ok(format!("largest hitting set {max_set}; star gap={g} amp={exact}"))
}

fn gl_invariance() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for i in 0..100 {
        let n = rng.gen_range(1..=14);
        let f = Poly::random_with(n, 3, &mut rng);
        let l = LinMap::random(n, &mut rng);
        let fl = f.apply_linear(&l).unwrap();
        ensure!(fl.degree() <= 3, "instance {i}: degree {}", fl.degree());
        ensure!(gap_bruteforce(&fl).unwrap() == gap_bruteforce(&f).unwrap(), "instance {i}: gap changed");
    }
    Ok("100 pairs".into())
}

fn minimization() -> Outcome {
    let sum = poly(include_str!("fixtures/sum10.poly"));
    let r = invariance_space(&sum, 20).map_err(|e| e.to_string())?;
    ensure!(r.essential_count == 1, "x1+...+x10 has {} essential variables", r.essential_count);

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst = 0;
    for i in 0..40 {
        let v = 1 + i % 6;
        let small = Poly::random_with(v, 3, &mut rng).with_n_vars(16).unwrap();
        let m = LinMap::random(16, &mut rng);
        let f = small.apply_linear(&m).unwrap();
        let r = invariance_space(&f, 20).map_err(|e| format!("instance {i}: {e}"))?;
        ensure!(r.essential_count <= v, "instance {i}: {} essential > {v}", r.essential_count);
        worst = worst.max(r.essential_count);
        let g = gap_via_minimization(&f, 20, 30).map_err(|e| e.to_string())?;
        ensure!(g == gap_bruteforce(&f).unwrap(), "instance {i}: gap mismatch");
    }
    Ok(format!("sum -> 1 variable; 40 planted instances, max essential {worst}"))
}

fn monte_carlo_calibration() -> Outcome {
    let f = Poly::random(16, 3, 2024);
    let exact = gap_bruteforce(&f).unwrap().to_i64().unwrap() as f64 / 65536.0;
    let mut failures = 0;
    for seed in 0..100 {
        let e = gap_monte_carlo(&f, 0.05, 0.05, seed).unwrap();
        ensure!(e.samples == 2952, "sample count {}", e.samples);
        if (e.normalized_estimate - exact).abs() > 0.05 {
            failures += 1;
        }
    }
    let rate = failures as f64 / 100.0;
    ensure!(rate <= MC_MAX_FAILURE_RATE, "failure rate {rate}");
    Ok(format!("samples=2952 failure rate {rate:.2}"))
}

fn three_terms() -> Outcome {
    let mut max_vars = 0;
    for seed in 0..50u64 {
        let c = random_circuit(1 + (seed % 5) as usize, 2 + (seed % 11) as usize, 500 + seed).unwrap();
        let padded = insert_h_pairs(&c).unwrap();
        let cp = circuit_to_poly(&padded).unwrap();
        max_vars = max_vars.max(cp.n_vars());
        for v in 1..=cp.n_vars() as u32 {
            ensure!(cp.poly().occurrences(v) <= 3, "seed {seed}: x{v} in {} monomials", cp.poly().occurrences(v));
        }
        let before = amplitude_00(&c, &opts()).map_err(|e| e.to_string())?;
        let after = amplitude_00(&padded, &opts()).map_err(|e| format!("seed {seed}: {e}"))?;
        ensure!(before == after, "seed {seed}: {before} became {after}");
    }
    Ok(format!("50 circuits, up to {max_vars} variables"))
}

fn measurement() -> Outcome {
    let mut worst = 0.0f64;
    for seed in 0..100u64 {
        let c = random_circuit(1 + (seed % 6) as usize, (seed % 16) as usize, 900 + seed).unwrap();
        let p = meas_prob_first_qubit(&c, &opts()).map_err(|e| format!("seed {seed}: {e}"))?;
        let sv = statevector_prob_first_qubit(&c).unwrap();
        let err = (p.to_f64() - sv).abs();
        worst = worst.max(err);
        ensure!(err <= PROB_TOL, "seed {seed}: {p} = {} vs oracle {sv}", p.to_f64());
    }
    Ok(format!("100 circuits, max error {worst:.1e}"))
}

fn sat_counting() -> Outcome {
    let fixtures = [
        (include_str!("fixtures/and.net"), 1u64),
        (include_str!("fixtures/or.net"), 3),
        (include_str!("fixtures/xor.net"), 2),
        (include_str!("fixtures/not.net"), 1),
        (include_str!("fixtures/majority3.net"), 4),
    ];
    let mut nets: Vec<(BoolCircuit, Option<u64>)> =
        fixtures.iter().map(|(t, c)| (BoolCircuit::parse(t).unwrap(), Some(*c))).collect();
    for seed in 0..30u64 {
        nets.push((random_netlist(1 + (seed % 10) as usize, 4 + (seed % 9) as usize, seed).unwrap(), None));
    }
    for (i, (b, fixed)) in nets.iter().enumerate() {
        let want = b.count_by_enumeration().unwrap();
        if let Some(c) = fixed {
            ensure!(*c == want, "fixture {i} enumerates to {want}, expected {c}");
        }
        let r = count_sat(b, &opts()).map_err(|e| format!("netlist {i}: {e}"))?;
        ensure!(r.count == BigInt::from(want), "netlist {i}: count {} vs {want}", r.count);
        let identity = (BigInt::one() << b.n_inputs()) - BigInt::from(2 * want);
        ensure!(r.gap == identity, "netlist {i}: gap {} vs 2^n - 2*count = {identity}", r.gap);
    }
    Ok(format!("{} netlists", nets.len()))
}

fn width_bounds() -> Outcome {
    let path = width_report(&poly(include_str!("fixtures/path8.poly"))).unwrap();
    ensure!(path.lower_bound == Some(1) && path.upper_bound == 1, "path: {}", path.summary());
    let pairs = width_report(&poly(include_str!("fixtures/pairs8.poly"))).unwrap();
    ensure!(pairs.chromatic == 2 && pairs.chromatic_exact && pairs.upper_bound == 4, "pairs: {}", pairs.summary());
    let triples = width_report(&poly(include_str!("fixtures/triples6.poly"))).unwrap();
    ensure!(triples.upper_bound == 6, "triples: {}", triples.summary());

    let mut corpus: Vec<Poly> = vec![
        poly(include_str!("fixtures/path8.poly")),
        poly(include_str!("fixtures/pairs8.poly")),
        poly(include_str!("fixtures/triples6.poly")),
        poly(include_str!("fixtures/two_triples.poly")),
        poly(include_str!("fixtures/sum10.poly")),
        circuit_to_poly(&three_qubit()).unwrap().into_poly(),
        circuit_to_poly(&star8()).unwrap().into_poly(),
    ];
    corpus.extend((0..100u64).map(|s| Poly::random(1 + (s % 12) as usize, 3, 3000 + s)));
    corpus.extend(random_corpus().iter().take(60).map(|c| circuit_to_poly(c).unwrap().into_poly()));
    let mut exact = 0;
    for (i, f) in corpus.iter().enumerate() {
        let r = width_report(f).unwrap();
        if let Some(lower) = r.lower_bound {
            ensure!(lower <= r.upper_bound, "corpus {i}: {}", r.summary());
            exact += 1;
        }
        let compiled = circuit_to_poly(&r.witness).unwrap();
        ensure!(compiled.poly().is_renaming_of(&f.without_constant()), "corpus {i}: witness does not realize f");
    }
    Ok(format!("{}; sandwich on {exact}/{} corpus polynomials", path.summary(), corpus.len()))
}

fn unitarity_bound() -> Outcome {
    let mut circuits = vec![three_qubit(), star8(), circ(include_str!("fixtures/cz.circ")), circ(include_str!("fixtures/h.circ"))];
    circuits.extend(random_corpus());
    let mut tight = 0;
    for (i, c) in circuits.iter().enumerate() {
        let cp = circuit_to_poly(c).unwrap();
        let g = gap_bruteforce_limited(cp.poly(), 26)
            .or_else(|_| opts().gap(cp.poly()))
            .map_err(|e| format!("circuit {i}: {e}"))?;
        let sq = g.value().abs().pow(2);
        let bound = BigInt::one() << (cp.n_vars() + c.n_qubits());
        ensure!(sq <= bound, "circuit {i}: gap {g} exceeds 2^(({} + {})/2)", cp.n_vars(), c.n_qubits());
        if sq == bound {
            tight += 1;
        }
    }
    Ok(format!("{} circuits, {tight} at the bound", circuits.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 13] = [
        ("three-qubit example: polynomial, gap 16, amplitude 1/2", three_qubit_fixture, Some(Duration::from_secs(1))),
        ("CZ and H forms of x1*x2", two_var_forms_fixture, None),
        ("compiled amplitudes match statevector", oracle_equivalence, Some(Duration::from_secs(120))),
        ("degree-2 engine exact", degree2_engine, None),
        ("hitting-set engine exact; CCZ star", hitting_engine, None),
        ("gap invariant under invertible linear maps", gl_invariance, None),
        ("variable minimization", minimization, None),
        ("Monte Carlo calibration", monte_carlo_calibration, None),
        ("H-pair insertion: <=3 occurrences, same amplitude", three_terms, None),
        ("first-qubit measurement probability", measurement, None),
        ("SAT counting through amplitudes", sat_counting, Some(Duration::from_secs(60))),
        ("width bounds", width_bounds, None),
        ("|gap| <= 2^((n+l)/2)", unitarity_bound, None),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, check, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        let outcome = match (outcome, limit) {
            (Ok(_), Some(l)) if elapsed > *l => Err(format!("took {elapsed:.2?}, limit {l:?}")),
            (o, _) => o,
        };
        let ms = elapsed.as_secs_f64() * 1e3;
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name} [{ms:.0} ms] {detail}", i + 1),
            Err(reason) => {
                failed += 1;
                println!("FAIL {:>2} {name} [{ms:.0} ms] {reason}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

