//! Quantum-side snapshot collection (the shadowing phase).

use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::models::measure_pauli_mean;
use crate::qsim::{CircuitSpec, PauliBasis, PauliString, Statevector};
use crate::rng::{stream, substream};
use crate::shadows::snapshot::{PauliShadow, ShadowSnapshot};

const BASES: [PauliBasis; 3] = [PauliBasis::X, PauliBasis::Y, PauliBasis::Z];

/// Collect `t` randomized Pauli measurement snapshots of
/// `state_prep |0..0>`. Snapshot `i` draws its basis choices and outcome
/// from the substream `(master_seed, i)`, so the result is bit-identical
/// for a fixed seed regardless of how the loop is scheduled.
pub fn collect_pauli_shadow(
    state_prep: &CircuitSpec,
    t: usize,
    master_seed: u64,
) -> Result<PauliShadow> {
    if t == 0 {
        return Err(Error::invalid("t", "snapshot count must be >= 1"));
    }
    let psi = Statevector::zero(state_prep.n())?.apply(state_prep)?;
    let n = psi.n();
    let snapshots: Vec<ShadowSnapshot> = (0..t)
        .into_par_iter()
        .map(|i| {
            let mut rng = substream(master_seed, i as u64);
            let bases: Vec<PauliBasis> =
                (0..n).map(|_| BASES[rng.gen_range(0..3)]).collect();
            let rotated = psi
                .rotate_to_pauli_basis(&bases)
                .expect("bases match the prepared state");
            let outcomes = rotated.sample_bits(&mut rng);
            ShadowSnapshot { bases, outcomes }
        })
        .collect();
    PauliShadow::new(n, master_seed, snapshots)
}

/// Direct per-Pauli estimation: measure `state_prep |0..0>` in the
/// eigenbasis of `p` for `shots` shots and average the eigenvalue
/// products over the support.
pub fn estimate_pauli_direct<R: Rng>(
    state_prep: &CircuitSpec,
    p: &PauliString,
    shots: u64,
    rng: &mut R,
) -> Result<f64> {
    if shots == 0 {
        return Err(Error::invalid("shots", "must be >= 1"));
    }
    let psi = Statevector::zero(state_prep.n())?.apply(state_prep)?;
    if p.n() != psi.n() {
        return Err(Error::DimensionMismatch {
            expected: psi.n(),
            got: p.n(),
        });
    }
    measure_pauli_mean(&psi, p, shots, rng)
}

/// Convenience stream for callers that hold only a master seed.
pub fn seeded_rng(master_seed: u64) -> rand_chacha::ChaCha8Rng {
    stream(master_seed)
}
