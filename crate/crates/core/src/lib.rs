//! Quantum circuits over the gate set {H, Z, CZ, CCZ} and their correspondence
//! with polynomials of degree at most three over GF(2).
//!
//! A circuit `C = H^⊗ℓ · C' · H^⊗ℓ` is stored by its internal part `C'`
//! ([`circuit::Circuit`]). Compiling it ([`compile::circuit_to_poly`]) assigns a
//! variable to every wire segment between Hadamard gates and yields a cubic
//! polynomial `f` whose gap `Σ_x (-1)^f(x)` determines the amplitude
//! `<0|C|0> = gap(f) / 2^(h/2 + ℓ)` exactly.
//!
//! The [`gap`] module holds the gap-counting engines (brute force, degree-2
//! recursion, hitting-set branching, variable minimization, Monte Carlo), the
//! [`oracle`] module a dense statevector simulator used as ground truth, and
//! [`width`] and [`satcount`] the width bounds and the SAT-counting pipeline.

pub mod circuit;
pub mod compile;
mod error;
pub mod f2poly;
pub mod gap;
pub mod oracle;
pub mod satcount;
pub mod width;

pub use circuit::{Circuit, Gate};
pub use compile::{Amplitude, CompiledPoly, Dyadic};
pub use error::{Error, Result};
pub use f2poly::{F2Vec, GapValue, LinMap, Monomial, Poly};
pub use gap::{Engine, GapOptions};
