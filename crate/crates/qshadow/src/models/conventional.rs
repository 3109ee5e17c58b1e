use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qsim::{expval_dense, CircuitSpec, Gate, Statevector, MAX_DENSE_QUBITS};

/// Gate of an encoding template: either a fixed gate or an RY whose angle
/// is read from a component of the input vector.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EncoderGate {
    Fixed { gate: Gate },
    RyInput { qubit: usize, input: usize },
}

/// Template for the data-encoding circuit `U(x)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Encoder {
    pub n: usize,
    pub gates: Vec<EncoderGate>,
}

impl Encoder {
    /// Encoder with no gates: `U(x) = I`.
    pub fn identity(n: usize) -> Self {
        Encoder { n, gates: vec![] }
    }

    /// `U(x) = RY(x_0) x ... x RY(x_{n-1})`, one input component per qubit.
    pub fn ry_product(n: usize) -> Self {
        Encoder {
            n,
            gates: (0..n)
                .map(|q| EncoderGate::RyInput { qubit: q, input: q })
                .collect(),
        }
    }

    /// Smallest input dimension the template accepts.
    pub fn input_dim(&self) -> usize {
        self.gates
            .iter()
            .filter_map(|g| match g {
                EncoderGate::RyInput { input, .. } => Some(input + 1),
                EncoderGate::Fixed { .. } => None,
            })
            .max()
            .unwrap_or(0)
    }

    /// Instantiate the concrete circuit for input `x`.
    pub fn encode(&self, x: &[f64]) -> Result<CircuitSpec> {
        if x.len() < self.input_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.input_dim(),
                got: x.len(),
            });
        }
        let gates = self
            .gates
            .iter()
            .map(|g| match g {
                EncoderGate::Fixed { gate } => gate.clone(),
                EncoderGate::RyInput { qubit, input } => Gate::Ry {
                    qubit: *qubit,
                    angle: x[*input],
                },
            })
            .collect();
        CircuitSpec::new(self.n, gates)
    }
}

/// One term `w_i O_i` with the known eigendecomposition
/// `O_i = sum_j lambda_{i,j} W_i |j><j| W_i^dag`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ObservableTerm {
    pub weight: f64,
    pub basis_change: CircuitSpec,
    pub eigenvalues: Vec<f64>,
}

/// Conventional linear model `f(x) = Tr[rho(x) O(theta)]` with
/// `rho(x) = U(x) rho_0 U^dag(x)` for a computational-basis mixture
/// `rho_0`, and `O(theta) = sum_i w_i V O_i V^dag`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConventionalLinearModel {
    pub n: usize,
    pub encoder: Encoder,
    /// `(basis index, probability)` pairs of the initial mixture.
    pub initial_state: Vec<(usize, f64)>,
    pub variational: CircuitSpec,
    pub terms: Vec<ObservableTerm>,
}

impl ConventionalLinearModel {
    pub fn new(
        n: usize,
        encoder: Encoder,
        initial_state: Vec<(usize, f64)>,
        variational: CircuitSpec,
        terms: Vec<ObservableTerm>,
    ) -> Result<Self> {
        let model = ConventionalLinearModel {
            n,
            encoder,
            initial_state,
            variational,
            terms,
        };
        model.validate()?;
        Ok(model)
    }

    pub fn validate(&self) -> Result<()> {
        let dim = 1usize << self.n;
        if self.encoder.n != self.n || self.variational.n() != self.n {
            return Err(Error::MalformedModel(
                "encoder / variational qubit count mismatch".into(),
            ));
        }
        if self.initial_state.is_empty() {
            return Err(Error::MalformedModel("empty initial mixture".into()));
        }
        let mut total = 0.0;
        for (b, p) in &self.initial_state {
            if *b >= dim {
                return Err(Error::MalformedModel(format!("basis index {b} >= {dim}")));
            }
            if !(*p >= 0.0) {
                return Err(Error::MalformedModel(format!("negative probability {p}")));
            }
            total += p;
        }
        if (total - 1.0).abs() > 1e-9 {
            return Err(Error::MalformedModel(format!(
                "initial mixture probabilities sum to {total}"
            )));
        }
        for t in &self.terms {
            if t.basis_change.n() != self.n {
                return Err(Error::MalformedModel(
                    "basis-change circuit qubit count mismatch".into(),
                ));
            }
            if t.eigenvalues.len() != dim {
                return Err(Error::MalformedModel(format!(
                    "{} eigenvalues for dimension {dim}",
                    t.eigenvalues.len()
                )));
            }
            if t.eigenvalues.iter().any(|l| !l.is_finite()) || !t.weight.is_finite() {
                return Err(Error::MalformedModel("non-finite term data".into()));
            }
        }
        Ok(())
    }

    /// Diagonal of `rho_0` as a dense vector of probabilities.
    pub fn initial_diagonal(&self) -> Vec<f64> {
        let mut diag = vec![0.0; 1 << self.n];
        for (b, p) in &self.initial_state {
            diag[*b] += p;
        }
        diag
    }

    /// Dense `rho(x) = U(x) rho_0 U^dag(x)`.
    pub fn dense_rho(&self, x: &[f64]) -> Result<DMatrix<Complex64>> {
        check_dense(self.n)?;
        let u = self.encoder.encode(x)?;
        let dim = 1usize << self.n;
        let mut rho = DMatrix::from_element(dim, dim, Complex64::new(0.0, 0.0));
        for (b, p) in &self.initial_state {
            if *p == 0.0 {
                continue;
            }
            let psi = Statevector::basis_state(self.n, *b)?.apply(&u)?;
            let amps = psi.amplitudes();
            for i in 0..dim {
                for j in 0..dim {
                    rho[(i, j)] += p * amps[i] * amps[j].conj();
                }
            }
        }
        Ok(rho)
    }

    /// Dense assembled observable `O(theta)`.
    pub fn dense_observable(&self) -> Result<DMatrix<Complex64>> {
        check_dense(self.n)?;
        let dim = 1usize << self.n;
        let mut obs = DMatrix::from_element(dim, dim, Complex64::new(0.0, 0.0));
        for term in &self.terms {
            if term.weight == 0.0 {
                continue;
            }
            // columns of V W_i are the evolved basis states
            let circuit = term.basis_change.then(&self.variational)?;
            let u = circuit_unitary(&circuit)?;
            for j in 0..dim {
                let lam = term.weight * term.eigenvalues[j];
                if lam == 0.0 {
                    continue;
                }
                let col = u.column(j);
                for r in 0..dim {
                    for c in 0..dim {
                        obs[(r, c)] += lam * col[r] * col[c].conj();
                    }
                }
            }
        }
        Ok(obs)
    }
}

/// Dense unitary of a circuit, one evolved basis state per column.
pub fn circuit_unitary(circuit: &CircuitSpec) -> Result<DMatrix<Complex64>> {
    check_dense(circuit.n())?;
    let dim = 1usize << circuit.n();
    let mut u = DMatrix::from_element(dim, dim, Complex64::new(0.0, 0.0));
    for j in 0..dim {
        let psi = Statevector::basis_state(circuit.n(), j)?.apply(circuit)?;
        for (i, a) in psi.amplitudes().iter().enumerate() {
            u[(i, j)] = *a;
        }
    }
    Ok(u)
}

/// `Tr[rho(x) O(theta)]`, assembled by dense algebra.
pub fn eval_conventional_exact(model: &ConventionalLinearModel, x: &[f64]) -> Result<f64> {
    model.validate()?;
    let rho = model.dense_rho(x)?;
    let obs = model.dense_observable()?;
    expval_dense(&rho, &obs)
}

fn check_dense(n: usize) -> Result<()> {
    if n > MAX_DENSE_QUBITS {
        return Err(Error::QubitLimit {
            role: "dense operator",
            limit: MAX_DENSE_QUBITS,
            n,
        });
    }
    Ok(())
}
