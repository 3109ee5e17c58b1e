//! Independent oracles shared by the verification suites. These recompute
//! expected values through routes that do not touch the code paths under
//! test.

#![allow(dead_code)]

use qshadow::models::ConventionalLinearModel;
use qshadow::qsim::Statevector;

/// Statevector-route evaluation of a conventional model:
/// `sum_b p_b sum_i w_i sum_j lambda_{i,j} |<j| (V W_i)^dag U(x) |b>|^2`,
/// avoiding the dense-matrix assembly used by the implementation.
pub fn conventional_statevector_oracle(model: &ConventionalLinearModel, x: &[f64]) -> f64 {
    let u = model.encoder.encode(x).expect("encoder accepts x");
    let mut value = 0.0;
    for (b, p) in &model.initial_state {
        if *p == 0.0 {
            continue;
        }
        let phi = Statevector::basis_state(model.n, *b)
            .unwrap()
            .apply(&u)
            .unwrap();
        for term in &model.terms {
            if term.weight == 0.0 {
                continue;
            }
            let undo = term
                .basis_change
                .then(&model.variational)
                .unwrap()
                .inverse();
            let in_eigenbasis = phi.apply(&undo).unwrap();
            let mean: f64 = in_eigenbasis
                .amplitudes()
                .iter()
                .zip(&term.eigenvalues)
                .map(|(a, l)| a.norm_sqr() * l)
                .sum();
            value += p * term.weight * mean;
        }
    }
    value
}

/// Exact expectation of one iteration of the importance-sampled flipped
/// evaluation, by exhaustive enumeration of the branches
/// `(i, b, j, j')` with their probabilities. Follows the printed sampling
/// scheme directly and shares nothing with the sampler under test.
pub fn algorithm1_branch_enumeration(
    model: &ConventionalLinearModel,
    x: &[f64],
    declared_trace_norm: Option<f64>,
) -> f64 {
    let term_budgets: Vec<f64> = model
        .terms
        .iter()
        .map(|t| t.weight.abs() * t.eigenvalues.iter().map(|l| l.abs()).sum::<f64>())
        .collect();
    let computed: f64 = term_budgets.iter().sum();
    let t = declared_trace_norm.unwrap_or(computed);
    if t == 0.0 {
        return 0.0;
    }
    let u_inv = model.encoder.encode(x).unwrap().inverse();
    let rho0 = model.initial_diagonal();

    let mut expectation = 0.0;
    // the slack branch (probability 1 - sum_i p_i) contributes zero
    for (term, term_budget) in model.terms.iter().zip(&term_budgets) {
        let p_term = term_budget / t;
        if p_term == 0.0 {
            continue;
        }
        let pos_sum: f64 = term.eigenvalues.iter().filter(|l| **l > 0.0).sum();
        let neg_sum: f64 = term
            .eigenvalues
            .iter()
            .filter(|l| **l < 0.0)
            .map(|l| -l)
            .sum();
        let term_norm = pos_sum + neg_sum;
        for (branch_sign, branch_sum) in [(1.0, pos_sum), (-1.0, neg_sum)] {
            if branch_sum == 0.0 {
                continue;
            }
            let p_branch = branch_sum / term_norm;
            for (j, lambda) in term.eigenvalues.iter().enumerate() {
                let mass = (branch_sign * lambda).max(0.0);
                if mass == 0.0 {
                    continue;
                }
                let p_j = mass / branch_sum;
                let psi = Statevector::basis_state(model.n, j)
                    .unwrap()
                    .apply(&term.basis_change.then(&model.variational).unwrap())
                    .unwrap()
                    .apply(&u_inv)
                    .unwrap();
                for (j_prime, amp) in psi.amplitudes().iter().enumerate() {
                    let p_outcome = amp.norm_sqr();
                    if p_outcome == 0.0 || rho0[j_prime] == 0.0 {
                        continue;
                    }
                    let contribution =
                        term.weight.signum() * branch_sign * t * rho0[j_prime];
                    expectation += p_term * p_branch * p_j * p_outcome * contribution;
                }
            }
        }
    }
    expectation
}

/// Upper critical value of the chi-squared distribution.
pub fn chi_squared_critical(df: f64, alpha: f64) -> f64 {
    use statrs::distribution::{ChiSquared, ContinuousCDF};
    ChiSquared::new(df).unwrap().inverse_cdf(1.0 - alpha)
}
