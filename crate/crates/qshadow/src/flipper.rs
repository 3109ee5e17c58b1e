//! Constructive mapping from conventional to flipped models, and the
//! importance-sampled flipped evaluation loop.
//!
//! The observable `O(theta) = sum_i w_i V O_i V^dag` is split into positive
//! and negative parts that are normalized into a block-diagonal state on
//! one extra ancilla qubit carrying the eigenvalue sign; the data state
//! `rho(x)` moves into the observable, scaled by the trace-norm budget
//! `T = sum_i |w_i| ||O_i||_1`. Any gap between `T` and the true
//! `||O(theta)||_1` becomes a maximally mixed slack component.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::models::{circuit_unitary, ConventionalLinearModel, NormLedger};
use crate::qsim::{expval_dense, DensityOperator, Statevector};
use crate::rng::substream;

/// Largest original qubit count for the dense flipping construction
/// (it builds operators on `n + 1` qubits).
pub const MAX_FLIP_QUBITS: usize = 9;

const ZERO_EIGENVALUE: f64 = 1e-12;

/// The flipped equivalent of a conventional model: a state builder for
/// `rho'(theta)` on `n + 1` qubits and an observable builder for
/// `O'(x) = T (|0><0| - |1><1|) (x) rho(x)`.
#[derive(Clone, Debug)]
pub struct FlippedForm {
    model: ConventionalLinearModel,
    p_plus: f64,
    p_minus: f64,
    p_zero: f64,
    rho_plus: Option<DMatrix<Complex64>>,
    rho_minus: Option<DMatrix<Complex64>>,
    ledger: NormLedger,
}

impl FlippedForm {
    /// `(p_+, p_-, p_0)` of the block mixture.
    pub fn probabilities(&self) -> (f64, f64, f64) {
        (self.p_plus, self.p_minus, self.p_zero)
    }

    pub fn ledger(&self) -> NormLedger {
        self.ledger
    }

    /// Build the dense `rho'(theta)` on `n + 1` qubits; the ancilla is
    /// qubit 0.
    pub fn state(&self) -> Result<DensityOperator> {
        let n = self.model.n;
        let dim = 1usize << n;
        let big = dim * 2;
        let mut m = DMatrix::from_element(big, big, Complex64::new(0.0, 0.0));
        let mixed = self.p_zero / big as f64;
        for i in 0..big {
            m[(i, i)] += Complex64::new(mixed, 0.0);
        }
        if let Some(rp) = &self.rho_plus {
            for i in 0..dim {
                for j in 0..dim {
                    m[(i, j)] += self.p_plus * rp[(i, j)];
                }
            }
        }
        if let Some(rm) = &self.rho_minus {
            for i in 0..dim {
                for j in 0..dim {
                    m[(dim + i, dim + j)] += self.p_minus * rm[(i, j)];
                }
            }
        }
        DensityOperator::new(n + 1, m)
    }

    /// Dense `O'(x)` on `n + 1` qubits.
    pub fn observable(&self, x: &[f64]) -> Result<DMatrix<Complex64>> {
        let rho_x = self.model.dense_rho(x)?;
        let dim = rho_x.nrows();
        let big = dim * 2;
        let t = Complex64::new(self.ledger.trace_norm, 0.0);
        let mut m = DMatrix::from_element(big, big, Complex64::new(0.0, 0.0));
        for i in 0..dim {
            for j in 0..dim {
                m[(i, j)] = t * rho_x[(i, j)];
                m[(dim + i, dim + j)] = -t * rho_x[(i, j)];
            }
        }
        Ok(m)
    }

    /// `Tr[rho'(theta) O'(x)]`, which reproduces the conventional value.
    pub fn eval(&self, x: &[f64]) -> Result<f64> {
        expval_dense(self.state()?.matrix(), &self.observable(x)?)
    }
}

/// Norm ledger of the model observable: `trace_norm` is the per-term
/// budget `sum_i |w_i| sum_j |lambda_{i,j}|` that drives the sampling
/// probabilities, `spectral_norm` the true `||O(theta)||_inf` from the
/// dense assembled observable.
pub fn term_norm_ledger(model: &ConventionalLinearModel) -> Result<NormLedger> {
    model.validate()?;
    let trace_norm: f64 = model
        .terms
        .iter()
        .map(|t| t.weight.abs() * t.eigenvalues.iter().map(|l| l.abs()).sum::<f64>())
        .sum();
    let spectral_norm = model
        .dense_observable()?
        .symmetric_eigen()
        .eigenvalues
        .iter()
        .fold(0.0f64, |acc, l| acc.max(l.abs()));
    NormLedger::new(trace_norm, spectral_norm)
}

/// Construct the equivalent flipped model of a conventional one.
///
/// For every input, `Tr[rho'(theta) O'(x)]` equals the conventional value
/// exactly (up to dense-algebra roundoff), and the spectral norm of
/// `O'(x)` equals the trace-norm budget whenever `rho(x)` is pure.
pub fn flip_conventional(model: &ConventionalLinearModel) -> Result<FlippedForm> {
    model.validate()?;
    if model.n > MAX_FLIP_QUBITS {
        return Err(Error::QubitLimit {
            role: "flipping construction",
            limit: MAX_FLIP_QUBITS,
            n: model.n,
        });
    }
    let ledger = term_norm_ledger(model)?;
    let obs = model.dense_observable()?;
    let eig = obs.symmetric_eigen();
    let dim = 1usize << model.n;

    let mut sum_plus = 0.0;
    let mut sum_minus = 0.0;
    let mut part_plus = DMatrix::from_element(dim, dim, Complex64::new(0.0, 0.0));
    let mut part_minus = DMatrix::from_element(dim, dim, Complex64::new(0.0, 0.0));
    for (idx, lambda) in eig.eigenvalues.iter().enumerate() {
        if lambda.abs() <= ZERO_EIGENVALUE {
            continue;
        }
        let v = eig.eigenvectors.column(idx);
        let target = if *lambda > 0.0 {
            sum_plus += lambda;
            &mut part_plus
        } else {
            sum_minus += -lambda;
            &mut part_minus
        };
        let scale = Complex64::new(lambda.abs(), 0.0);
        for r in 0..dim {
            for c in 0..dim {
                *target.get_mut((r, c)).unwrap() += scale * v[r] * v[c].conj();
            }
        }
    }

    let t = ledger.trace_norm;
    if t <= ZERO_EIGENVALUE {
        // a zero budget with a nonzero observable cannot happen
        assert!(
            sum_plus + sum_minus <= 1e-9,
            "zero trace norm with nonzero observable"
        );
        return Ok(FlippedForm {
            model: model.clone(),
            p_plus: 0.0,
            p_minus: 0.0,
            p_zero: 1.0,
            rho_plus: None,
            rho_minus: None,
            ledger,
        });
    }

    let normalize = |part: DMatrix<Complex64>, sum: f64| {
        if sum <= ZERO_EIGENVALUE {
            None
        } else {
            Some(part / Complex64::new(sum, 0.0))
        }
    };
    let p_plus = sum_plus / t;
    let p_minus = sum_minus / t;
    let p_zero = ((t - sum_plus - sum_minus) / t).max(0.0);
    Ok(FlippedForm {
        model: model.clone(),
        p_plus,
        p_minus,
        p_zero,
        rho_plus: normalize(part_plus, sum_plus),
        rho_minus: normalize(part_minus, sum_minus),
        ledger,
    })
}

/// Per-term decomposition data used by the sampling loop.
struct TermSampler {
    sign: f64,
    /// `|w_i| ||O_i||_1 / T`
    select_prob: f64,
    /// positive-branch mass `||O_{i,+}||_1 / ||O_i||_1`
    positive_mass: f64,
    /// eigenvalues of the raw `O_i`
    eigenvalues: Vec<f64>,
    pos_sum: f64,
    neg_sum: f64,
    /// `V . W_i` as one circuit
    prep: crate::qsim::CircuitSpec,
}

/// Flipped evaluation of a conventional model by importance sampling.
///
/// Each iteration samples a term `i` with probability
/// `|w_i| ||O_i||_1 / T` (a slack branch absorbs any residual probability
/// and contributes zero), a sign branch `b`, an eigenindex `j` within the
/// branch, prepares `V W_i |j>`, measures it after `U^dag(x)` in the
/// computational basis to obtain `j'`, and accumulates
/// `sign(w_i) . b . T . rho_{0,j'}`. The mean of the iterates is an
/// unbiased estimate of `Tr[rho(x) O(theta)]`.
pub fn algorithm1_eval(
    model: &ConventionalLinearModel,
    x: &[f64],
    n_iters: u64,
    master_seed: u64,
) -> Result<f64> {
    algorithm1_eval_with_budget(model, x, n_iters, master_seed, None)
}

/// As [`algorithm1_eval`], with an optional declared trace-norm budget
/// `T >= sum_i |w_i| ||O_i||_1`; the surplus goes to the slack branch.
pub fn algorithm1_eval_with_budget(
    model: &ConventionalLinearModel,
    x: &[f64],
    n_iters: u64,
    master_seed: u64,
    declared_trace_norm: Option<f64>,
) -> Result<f64> {
    model.validate()?;
    if n_iters == 0 {
        return Err(Error::invalid("n_iters", "must be >= 1"));
    }
    let computed: f64 = model
        .terms
        .iter()
        .map(|t| t.weight.abs() * t.eigenvalues.iter().map(|l| l.abs()).sum::<f64>())
        .sum();
    let t = match declared_trace_norm {
        Some(d) => {
            if d + 1e-12 < computed {
                return Err(Error::invalid(
                    "declared_trace_norm",
                    format!("{d} is below the computed budget {computed}"),
                ));
            }
            d
        }
        None => computed,
    };
    if t == 0.0 {
        return Ok(0.0);
    }

    let mut samplers = Vec::with_capacity(model.terms.len());
    for term in &model.terms {
        let pos_sum: f64 = term.eigenvalues.iter().filter(|l| **l > 0.0).sum();
        let neg_sum: f64 = term
            .eigenvalues
            .iter()
            .filter(|l| **l < 0.0)
            .map(|l| -l)
            .sum();
        let term_norm = pos_sum + neg_sum;
        samplers.push(TermSampler {
            sign: term.weight.signum(),
            select_prob: term.weight.abs() * term_norm / t,
            positive_mass: if term_norm > 0.0 {
                pos_sum / term_norm
            } else {
                0.0
            },
            eigenvalues: term.eigenvalues.clone(),
            pos_sum,
            neg_sum,
            prep: term.basis_change.then(&model.variational)?,
        });
    }
    let select_total: f64 = samplers.iter().map(|s| s.select_prob).sum();
    assert!(
        select_total <= 1.0 + 1e-9,
        "term selection probabilities sum to {select_total}: bad ledger"
    );

    let u_inv = model.encoder.encode(x)?.inverse();
    let rho0 = model.initial_diagonal();

    let mut acc = 0.0;
    for iter in 0..n_iters {
        let mut rng = substream(master_seed, iter);
        acc += sample_iteration(model, &samplers, &u_inv, &rho0, t, &mut rng)?;
    }
    Ok(acc / n_iters as f64)
}

fn sample_iteration<R: Rng>(
    model: &ConventionalLinearModel,
    samplers: &[TermSampler],
    u_inv: &crate::qsim::CircuitSpec,
    rho0: &[f64],
    t: f64,
    rng: &mut R,
) -> Result<f64> {
    // sample the term index; the residual mass is the slack branch
    let mut u: f64 = rng.gen();
    let mut chosen = None;
    for s in samplers {
        if u < s.select_prob {
            chosen = Some(s);
            break;
        }
        u -= s.select_prob;
    }
    let Some(s) = chosen else {
        return Ok(0.0); // slack branch: count the iteration, contribute zero
    };

    // sign branch
    let positive = rng.gen::<f64>() < s.positive_mass;
    let (branch_sign, branch_sum) = if positive {
        (1.0, s.pos_sum)
    } else {
        (-1.0, s.neg_sum)
    };
    debug_assert!(branch_sum > 0.0, "empty sign branch sampled: bad ledger");

    // eigenindex within the branch, with probability |lambda_j| / branch sum
    let mut v: f64 = rng.gen::<f64>() * branch_sum;
    let mut j = None;
    for (idx, lambda) in s.eigenvalues.iter().enumerate() {
        let mass = if positive {
            lambda.max(0.0)
        } else {
            (-lambda).max(0.0)
        };
        if mass == 0.0 {
            continue;
        }
        if v < mass {
            j = Some(idx);
            break;
        }
        v -= mass;
    }
    let j = j.unwrap_or_else(|| {
        // cumulative roundoff: fall back to the last massive index
        s.eigenvalues
            .iter()
            .enumerate()
            .rev()
            .find(|(_, l)| if positive { **l > 0.0 } else { **l < 0.0 })
            .map(|(idx, _)| idx)
            .expect("sampled branch has mass")
    });

    // prepare V W_i |j>, undo the encoding, measure
    let psi = Statevector::basis_state(model.n, j)?
        .apply(&s.prep)?
        .apply(u_inv)?;
    let j_prime = psi.sample_index(rng);
    Ok(s.sign * branch_sign * t * rho0[j_prime])
}

/// Dense unitary of the combined preparation `V W_i` for test cross-checks.
pub fn term_prep_unitary(
    model: &ConventionalLinearModel,
    term_index: usize,
) -> Result<DMatrix<Complex64>> {
    let term = model
        .terms
        .get(term_index)
        .ok_or_else(|| Error::invalid("term_index", "out of range"))?;
    circuit_unitary(&term.basis_change.then(&model.variational)?)
}
