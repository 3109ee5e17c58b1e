//! Seeded random instances used by the verification suites and the demo
//! subcommands.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::models::{
    ConventionalLinearModel, Encoder, EncoderGate, FlippedLinearModel, ObservableTerm,
    WeightFamily,
};
use crate::qsim::{CircuitSpec, Gate, PauliLetter, PauliString, Statevector};

/// Random circuit over the supported gate set.
pub fn random_circuit<R: Rng>(n: usize, depth: usize, rng: &mut R) -> CircuitSpec {
    let mut gates = Vec::with_capacity(depth);
    for _ in 0..depth {
        let q = rng.gen_range(0..n);
        let gate = match rng.gen_range(0..6) {
            0 => Gate::Ry {
                qubit: q,
                angle: rng.gen_range(0.0..std::f64::consts::TAU),
            },
            1 => Gate::H { qubit: q },
            2 => Gate::S { qubit: q },
            3 => Gate::Sdg { qubit: q },
            4 => Gate::X { qubit: q },
            _ => {
                if n < 2 {
                    Gate::H { qubit: q }
                } else {
                    let mut t = rng.gen_range(0..n - 1);
                    if t >= q {
                        t += 1;
                    }
                    Gate::Cnot {
                        control: q,
                        target: t,
                    }
                }
            }
        };
        gates.push(gate);
    }
    CircuitSpec::new(n, gates).expect("generated indices are in range")
}

/// Random state prepared by a random circuit on `|0..0>`.
pub fn random_statevector<R: Rng>(n: usize, depth: usize, rng: &mut R) -> Statevector {
    Statevector::zero(n)
        .expect("desk-scale n")
        .apply(&random_circuit(n, depth, rng))
        .expect("matching qubit count")
}

/// Random Pauli string with locality drawn from `1..=max_k`.
pub fn random_pauli<R: Rng>(n: usize, max_k: usize, rng: &mut R) -> PauliString {
    let k = rng.gen_range(1..=max_k.min(n));
    let mut qubits: Vec<usize> = (0..n).collect();
    qubits.shuffle(rng);
    let mut letters = vec![PauliLetter::I; n];
    for q in qubits.into_iter().take(k) {
        letters[q] = match rng.gen_range(0..3) {
            0 => PauliLetter::X,
            1 => PauliLetter::Y,
            _ => PauliLetter::Z,
        };
    }
    PauliString::new(letters)
}

/// Random flipped model: random state-prep circuit, `m` Paulis of locality
/// up to `max_k`, and an affine weight family in one input variable scaled
/// so the declared bound is exactly `bound`.
pub fn random_flipped_model<R: Rng>(
    n: usize,
    m: usize,
    max_k: usize,
    bound: f64,
    rng: &mut R,
) -> FlippedLinearModel {
    let paulis: Vec<PauliString> = (0..m).map(|_| random_pauli(n, max_k, rng)).collect();
    let mut intercepts: Vec<f64> = (0..m).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let mut slopes: Vec<Vec<f64>> = (0..m)
        .map(|_| vec![rng.gen_range(-1.0..1.0)])
        .collect();
    let raw: f64 = intercepts
        .iter()
        .zip(&slopes)
        .map(|(c, a)| c.abs() + a[0].abs())
        .sum();
    let scale = if raw > 0.0 { bound / raw } else { 0.0 };
    for c in &mut intercepts {
        *c *= scale;
    }
    for a in &mut slopes {
        a[0] *= scale;
    }
    FlippedLinearModel::new(
        n,
        random_circuit(n, 3 * n, rng),
        paulis,
        WeightFamily::Affine {
            intercepts,
            slopes,
            bound,
        },
    )
    .expect("construction is consistent")
}

/// Random conventional model with an RY-product encoder (plus a CNOT chain
/// on two or more qubits), `terms` observable terms with random
/// eigendecompositions, and a pure or mixed computational-basis start.
pub fn random_conventional_model<R: Rng>(
    n: usize,
    terms: usize,
    pure_start: bool,
    rng: &mut R,
) -> ConventionalLinearModel {
    let mut encoder_gates: Vec<EncoderGate> = (0..n)
        .map(|q| EncoderGate::RyInput { qubit: q, input: q })
        .collect();
    for q in 0..n.saturating_sub(1) {
        encoder_gates.push(EncoderGate::Fixed {
            gate: Gate::Cnot {
                control: q,
                target: q + 1,
            },
        });
    }
    let encoder = Encoder {
        n,
        gates: encoder_gates,
    };

    let dim = 1usize << n;
    let initial_state = if pure_start {
        vec![(rng.gen_range(0..dim), 1.0)]
    } else {
        let a = rng.gen_range(0..dim);
        let mut b = rng.gen_range(0..dim - 1);
        if b >= a {
            b += 1;
        }
        let p = rng.gen_range(0.2..0.8);
        vec![(a, p), (b, 1.0 - p)]
    };

    let term_list = (0..terms)
        .map(|_| ObservableTerm {
            weight: rng.gen_range(0.2..1.2) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 },
            basis_change: random_circuit(n, 2 * n, rng),
            eigenvalues: (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect(),
        })
        .collect();

    ConventionalLinearModel::new(
        n,
        encoder,
        initial_state,
        random_circuit(n, 3 * n, rng),
        term_list,
    )
    .expect("construction is consistent")
}

/// Random dense Hermitian matrix with entries of order one.
pub fn random_hermitian<R: Rng>(dim: usize, rng: &mut R) -> DMatrix<Complex64> {
    let mut m = DMatrix::from_element(dim, dim, Complex64::new(0.0, 0.0));
    for i in 0..dim {
        m[(i, i)] = Complex64::new(rng.gen_range(-1.0..1.0), 0.0);
        for j in (i + 1)..dim {
            let v = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            m[(i, j)] = v;
            m[(j, i)] = v.conj();
        }
    }
    m
}

/// Evenly spaced grid of `points` one-dimensional inputs over `[lo, hi]`.
pub fn input_grid(points: usize, lo: f64, hi: f64) -> Vec<Vec<f64>> {
    (0..points)
        .map(|i| {
            let t = if points > 1 {
                i as f64 / (points - 1) as f64
            } else {
                0.5
            };
            vec![lo + t * (hi - lo)]
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::stream;

    #[test]
    fn random_flipped_model_has_requested_shape() {
        let mut rng = stream(1);
        let model = random_flipped_model(3, 5, 2, 0.8, &mut rng);
        assert_eq!(model.n, 3);
        assert_eq!(model.paulis.len(), 5);
        assert!(model.k_max() <= 2 && model.k_max() >= 1);
        assert!((model.weights.bound() - 0.8).abs() < 1e-12);
    }

    #[test]
    fn random_conventional_model_validates() {
        let mut rng = stream(2);
        for pure in [true, false] {
            let model = random_conventional_model(2, 3, pure, &mut rng);
            model.validate().unwrap();
        }
    }

    #[test]
    fn hermitian_fixture_is_hermitian() {
        let mut rng = stream(3);
        let m = random_hermitian(8, &mut rng);
        assert!(crate::qsim::hermitian_deviation(&m) < 1e-15);
    }
}
