//! The product-encoded search exhibit: a conventional model whose
//! black-box evaluation is a database search with cost growing as 2^n,
//! while its flipped counterpart is recovered exactly from a single
//! computational-basis measurement.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::models::{rotated_projector_paulis, FlippedLinearModel, WeightFamily};
use crate::qsim::{CircuitSpec, Gate, Statevector};
use std::f64::consts::FRAC_PI_2;

/// `f_y(x) = Tr[rho(x) |y><y|]` with the per-qubit RY product encoding.
/// On the corner grid `x in {0, pi/2}^n` this is the indicator of `y`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroverModel {
    pub n: usize,
    pub y: Vec<bool>,
}

impl GroverModel {
    pub fn new(n: usize, y: Vec<bool>) -> Result<Self> {
        if y.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: y.len(),
            });
        }
        if n == 0 || n > 22 {
            return Err(Error::invalid("n", "supported range is 1..=22"));
        }
        Ok(GroverModel { n, y })
    }

    pub fn from_index(n: usize, index: usize) -> Result<Self> {
        let y = (0..n).map(|q| index & (1 << (n - 1 - q)) != 0).collect();
        GroverModel::new(n, y)
    }

    /// Basis-state index of the marked string (qubit 0 is the MSB).
    pub fn target_index(&self) -> usize {
        self.y
            .iter()
            .fold(0usize, |acc, bit| (acc << 1) | usize::from(*bit))
    }

    /// The X-gate circuit that prepares `|y>`, which is how the marked
    /// string enters the flipped model's state side.
    pub fn preparation_circuit(&self) -> CircuitSpec {
        let gates = self
            .y
            .iter()
            .enumerate()
            .filter(|(_, bit)| **bit)
            .map(|(q, _)| Gate::X { qubit: q })
            .collect();
        CircuitSpec::new(self.n, gates).expect("indices in range")
    }
}

/// Closed form `prod_i cos^2(x_i)^(1-y_i) sin^2(x_i)^(y_i)`.
pub fn grover_eval(model: &GroverModel, x: &[f64]) -> Result<f64> {
    if x.len() != model.n {
        return Err(Error::DimensionMismatch {
            expected: model.n,
            got: x.len(),
        });
    }
    let mut value = 1.0;
    for (xi, yi) in x.iter().zip(&model.y) {
        let (s, c) = xi.sin_cos();
        value *= if *yi { s * s } else { c * c };
    }
    Ok(value)
}

/// The corner input `x = (pi/2) bits(index)`.
pub fn corner_input(n: usize, index: usize) -> Vec<f64> {
    (0..n)
        .map(|q| {
            if index & (1 << (n - 1 - q)) != 0 {
                FRAC_PI_2
            } else {
                0.0
            }
        })
        .collect()
}

/// How the searcher reads the oracle: the exact expectation value, or a
/// single Bernoulli draw with that success probability per query.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QueryMode {
    Expectation,
    Bernoulli,
}

/// One shot of the model at `x`: returns 1 with the Born probability
/// `f_y(x)`, which is all a single circuit evaluation reveals.
pub fn bernoulli_query<R: Rng>(model: &GroverModel, x: &[f64], rng: &mut R) -> Result<bool> {
    let p = grover_eval(model, x)?;
    Ok(rng.gen::<f64>() < p)
}

/// Oracle wrapper: the searcher sees only query results, never `y`.
struct CornerOracle<'a> {
    model: &'a GroverModel,
    queries: u64,
}

impl CornerOracle<'_> {
    fn query<R: Rng>(&mut self, x: &[f64], mode: QueryMode, rng: &mut R) -> Result<bool> {
        self.queries += 1;
        match mode {
            QueryMode::Expectation => Ok(grover_eval(self.model, x)? > 0.5),
            QueryMode::Bernoulli => bernoulli_query(self.model, x, rng),
        }
    }
}

/// Uniform-without-replacement search over the 2^n corners; returns the
/// number of oracle calls spent locating the marked string.
pub fn blackbox_search<R: Rng>(
    model: &GroverModel,
    mode: QueryMode,
    rng: &mut R,
) -> Result<u64> {
    if model.n > 20 {
        return Err(Error::invalid("n", "corner search supports up to 20 qubits"));
    }
    let mut order: Vec<usize> = (0..(1usize << model.n)).collect();
    order.shuffle(rng);
    let mut oracle = CornerOracle { model, queries: 0 };
    for corner in order {
        let x = corner_input(model.n, corner);
        if oracle.query(&x, mode, rng)? {
            return Ok(oracle.queries);
        }
    }
    Err(Error::invalid(
        "oracle",
        "marked element not found on any corner",
    ))
}

/// Mean and variance of the query count of the uniform search:
/// `(2^n + 1) / 2` and `(2^n - 1)(2^n + 1) / 12`.
pub fn search_query_statistics(n: usize) -> (f64, f64) {
    let size = (1u64 << n) as f64;
    (0.5 * (size + 1.0), (size - 1.0) * (size + 1.0) / 12.0)
}

/// Classical evaluator reconstructed in the shadowing phase.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecoveredEvaluator {
    pub y: Vec<bool>,
    pub measurements_used: u64,
}

impl RecoveredEvaluator {
    /// Exact classical evaluation from the recovered string.
    pub fn eval(&self, x: &[f64]) -> Result<f64> {
        let model = GroverModel::new(self.y.len(), self.y.clone())?;
        grover_eval(&model, x)
    }
}

/// Shadowing phase of the flipped counterpart: prepare `|y>` with the
/// X-gate circuit, measure once in the computational basis, and return
/// the closed-form evaluator for the reconstructed string.
pub fn flipped_shadow_recover<R: Rng>(
    model: &GroverModel,
    rng: &mut R,
) -> Result<RecoveredEvaluator> {
    let psi = Statevector::zero(model.n)?.apply(&model.preparation_circuit())?;
    let y = psi.sample_bits(rng);
    Ok(RecoveredEvaluator {
        y,
        measurements_used: 1,
    })
}

/// The same model written as a flipped linear model: state side `|y>`,
/// observable side the rotated-projector Pauli family. Supports up to 12
/// qubits (3^n terms).
pub fn grover_flipped_model(model: &GroverModel) -> Result<FlippedLinearModel> {
    FlippedLinearModel::new(
        model.n,
        model.preparation_circuit(),
        rotated_projector_paulis(model.n),
        WeightFamily::RotatedProjector { qubits: model.n },
    )
}
