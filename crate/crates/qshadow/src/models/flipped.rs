use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::models::sampling::{check_tolerances, required_samples};
use crate::models::weights::WeightFamily;
use crate::qsim::{CircuitSpec, PauliBasis, PauliLetter, PauliString, Statevector};
use crate::rng::substream;

/// Flipped linear model `f(x) = Tr[rho(theta) O(x)]` with
/// `rho(theta) = V|0..0><0..0|V^dag` and `O(x) = sum_j w_j(x) P_j`.
/// Variational parameters are baked into the gate angles of `state_prep`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FlippedLinearModel {
    pub n: usize,
    pub state_prep: CircuitSpec,
    pub paulis: Vec<PauliString>,
    pub weights: WeightFamily,
}

impl FlippedLinearModel {
    pub fn new(
        n: usize,
        state_prep: CircuitSpec,
        paulis: Vec<PauliString>,
        weights: WeightFamily,
    ) -> Result<Self> {
        let model = FlippedLinearModel {
            n,
            state_prep,
            paulis,
            weights,
        };
        model.validate()?;
        Ok(model)
    }

    pub fn validate(&self) -> Result<()> {
        if self.state_prep.n() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: self.state_prep.n(),
            });
        }
        for p in &self.paulis {
            if p.n() != self.n {
                return Err(Error::DimensionMismatch {
                    expected: self.n,
                    got: p.n(),
                });
            }
        }
        self.weights.validate()?;
        if self.weights.term_count() != self.paulis.len() {
            return Err(Error::MalformedModel(format!(
                "{} weights for {} Paulis",
                self.weights.term_count(),
                self.paulis.len()
            )));
        }
        Ok(())
    }

    /// Maximum locality over the model's Pauli terms.
    pub fn k_max(&self) -> usize {
        self.paulis.iter().map(PauliString::locality).max().unwrap_or(0)
    }

    /// `V(theta)|0..0>`.
    pub fn prepared_state(&self) -> Result<Statevector> {
        Statevector::zero(self.n)?.apply(&self.state_prep)
    }
}

/// Exact evaluation: `sum_j w_j(x) <P_j>` on the prepared statevector.
pub fn eval_flipped_exact(model: &FlippedLinearModel, x: &[f64]) -> Result<f64> {
    model.validate()?;
    let w = model.weights.evaluate(x)?;
    let psi = model.prepared_state()?;
    let mut value = 0.0;
    for (wj, pj) in w.iter().zip(&model.paulis) {
        if *wj != 0.0 {
            value += wj * psi.expval_pauli(pj)?;
        }
    }
    debug_assert!(value.abs() <= model.weights.bound() + 1e-9);
    Ok(value)
}

/// Sampling-based evaluation by per-term eigenbasis measurement.
///
/// Each `<P_j>` gets enough shots that the weighted total error stays
/// within `epsilon` with probability at least `1 - delta`: per-term error
/// budget `epsilon / B` and confidence split `delta / m`. Shots for term
/// `j` are drawn from the substream `(master_seed, j)`, so results are
/// identical however the term loop is scheduled.
pub fn eval_flipped_sampled(
    model: &FlippedLinearModel,
    x: &[f64],
    epsilon: f64,
    delta: f64,
    master_seed: u64,
) -> Result<f64> {
    model.validate()?;
    check_tolerances(epsilon, delta)?;
    let w = model.weights.evaluate(x)?;
    let bound = model.weights.bound();
    if bound == 0.0 {
        return Ok(0.0);
    }
    let m = model.paulis.len().max(1);
    let shots = required_samples(1.0, epsilon / bound, delta / m as f64)?;
    let psi = model.prepared_state()?;
    let mut value = 0.0;
    for (j, (wj, pj)) in w.iter().zip(&model.paulis).enumerate() {
        if *wj == 0.0 {
            continue;
        }
        let mut rng = substream(master_seed, j as u64);
        value += wj * measure_pauli_mean(&psi, pj, shots, &mut rng)?;
    }
    Ok(value)
}

/// Mean of `shots` single-shot eigenvalue readings of `p` on `psi`,
/// obtained by rotating into the eigenbasis and sampling bits.
/// The identity string reads 1 without sampling.
pub(crate) fn measure_pauli_mean<R: Rng>(
    psi: &Statevector,
    p: &PauliString,
    shots: u64,
    rng: &mut R,
) -> Result<f64> {
    let support = p.support();
    if support.is_empty() {
        return Ok(1.0);
    }
    let bases: Vec<PauliBasis> = p
        .letters()
        .iter()
        .map(|l| match l {
            PauliLetter::X => PauliBasis::X,
            PauliLetter::Y => PauliBasis::Y,
            // identity qubits are measured in Z; their bits are ignored
            PauliLetter::I | PauliLetter::Z => PauliBasis::Z,
        })
        .collect();
    let rotated = psi.rotate_to_pauli_basis(&bases)?;
    let mut acc = 0i64;
    for _ in 0..shots {
        let bits = rotated.sample_bits(rng);
        let mut eig = 1i64;
        for q in &support {
            if bits[*q] {
                eig = -eig;
            }
        }
        acc += eig;
    }
    if shots == 0 {
        return Ok(0.0);
    }
    Ok(acc as f64 / shots as f64)
}
