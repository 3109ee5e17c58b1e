use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::dcr::concept::LabeledSample;
use crate::dcr::factor::factor_semiprime;
use crate::dcr::modulus::in_upper_half_interval;
use crate::dcr::primes::inverse_of_three;
use crate::dcr::serde_util::biguint_dec;
use crate::error::{Error, Result};

/// The learner's output and the deployment-phase advice: a candidate key
/// and threshold. Together with the public `N` this is everything the
/// classical evaluator needs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hypothesis {
    #[serde(with = "biguint_dec")]
    pub d_prime: BigUint,
    #[serde(with = "biguint_dec")]
    pub s_prime: BigUint,
}

/// Training-set size that guarantees a candidate threshold within
/// `epsilon N` of the target with probability `1 - delta`:
/// `ceil(ln(delta) / ln(1 - 2 epsilon))`.
pub fn required_training_size(epsilon: f64, delta: f64) -> Result<u64> {
    if !(epsilon > 0.0 && epsilon < 0.5) {
        return Err(Error::invalid("epsilon", "must lie in (0, 1/2)"));
    }
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::invalid("delta", "must lie in (0, 1)"));
    }
    let size = delta.ln() / (1.0 - 2.0 * epsilon).ln();
    Ok((size.ceil() as u64).max(1))
}

/// Recover the trapdoor key by factoring the public `N` (the desk-scale
/// stand-in for the quantum factoring step) and pick the candidate
/// threshold among the roots of the training points that minimizes the
/// training loss; ties break toward the smallest threshold.
pub fn quantum_learn(
    dataset: &[LabeledSample],
    n: &BigUint,
    epsilon: f64,
    delta: f64,
) -> Result<Hypothesis> {
    let required = required_training_size(epsilon, delta)? as usize;
    if dataset.len() < required {
        return Err(Error::InsufficientData {
            got: dataset.len(),
            required,
        });
    }
    for sample in dataset {
        if sample.x >= *n {
            return Err(Error::invalid("dataset", "sample outside Z_N"));
        }
    }
    let (p, q) = factor_semiprime(n)?;
    let phi = (&p - 1u32) * (&q - 1u32);
    let d_prime = inverse_of_three(&phi).ok_or_else(|| {
        Error::BadModulus(n.to_string(), "3 has no inverse mod phi".into())
    })?;

    // candidate thresholds are the roots of the training points
    let roots: Vec<BigUint> = dataset
        .iter()
        .map(|sample| sample.x.modpow(&d_prime, n))
        .collect();
    let mut best: Option<(usize, &BigUint)> = None;
    for candidate in &roots {
        let loss = dataset
            .iter()
            .zip(&roots)
            .filter(|(sample, root)| {
                in_upper_half_interval(root, candidate, n) != sample.label
            })
            .count();
        best = match best {
            None => Some((loss, candidate)),
            Some((best_loss, best_s)) => {
                if loss < best_loss || (loss == best_loss && candidate < best_s) {
                    Some((loss, candidate))
                } else {
                    Some((best_loss, best_s))
                }
            }
        };
    }
    let (_, s_prime) = best.expect("dataset is nonempty");
    Ok(Hypothesis {
        d_prime,
        s_prime: s_prime.clone(),
    })
}

/// Deployment-phase evaluation: purely classical arithmetic on
/// `(d', s', N)`.
pub fn hypothesis_eval(h: &Hypothesis, x: &BigUint, n: &BigUint) -> Result<bool> {
    if x >= n {
        return Err(Error::invalid("x", "input outside Z_N"));
    }
    let y = x.modpow(&h.d_prime, n);
    Ok(in_upper_half_interval(&y, &h.s_prime, n))
}
