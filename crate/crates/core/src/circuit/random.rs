use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Circuit, Gate};
use crate::error::Result;

/// Seeded random core circuit: each gate kind is drawn uniformly among the
/// kinds that fit on `n_qubits`, on uniformly chosen distinct qubits.
pub fn random_circuit(n_qubits: usize, n_gates: usize, seed: u64) -> Result<Circuit> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_circuit_with(n_qubits, n_gates, &mut rng)
}

pub(crate) fn random_circuit_with<R: Rng + ?Sized>(n_qubits: usize, n_gates: usize, rng: &mut R) -> Result<Circuit> {
    let mut c = Circuit::new(n_qubits)?;
    let kinds = match n_qubits {
        1 => 2,
        2 => 3,
        _ => 4,
    };
    for _ in 0..n_gates {
        let kind = rng.gen_range(0..kinds);
        let arity = [1, 1, 2, 3][kind];
        let q = sample(rng, n_qubits, arity).into_vec();
        let g = match kind {
            0 => Gate::H(q[0]),
            1 => Gate::Z(q[0]),
            2 => Gate::CZ(q[0], q[1]),
            _ => Gate::CCZ(q[0], q[1], q[2]),
        };
        c.push(g)?;
    }
    Ok(c)
}
