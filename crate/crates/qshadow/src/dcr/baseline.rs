use num_bigint::BigUint;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::dcr::concept::LabeledSample;
use crate::dcr::modulus::in_upper_half_interval;
use crate::error::{Error, Result};

/// Held-out accuracies of the classical reference learners. None of them
/// factors `N`; they only ever see `(x, label)` pairs.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BaselineReport {
    /// best wrapped-interval threshold on raw `x`
    pub threshold_accuracy: f64,
    /// perceptron on the bits of `x`
    pub perceptron_accuracy: f64,
    /// k-nearest-neighbor under circular distance
    pub knn_accuracy: f64,
}

impl BaselineReport {
    pub fn best(&self) -> f64 {
        self.threshold_accuracy
            .max(self.perceptron_accuracy)
            .max(self.knn_accuracy)
    }
}

/// Train the three baselines on `train` and score them on `heldout`.
pub fn classical_baseline(
    train: &[LabeledSample],
    heldout: &[LabeledSample],
    n: &BigUint,
) -> Result<BaselineReport> {
    if train.is_empty() || heldout.is_empty() {
        return Err(Error::invalid("dataset", "train and heldout must be nonempty"));
    }
    Ok(BaselineReport {
        threshold_accuracy: threshold_baseline(train, heldout, n),
        perceptron_accuracy: perceptron_baseline(train, heldout, n),
        knn_accuracy: knn_baseline(train, heldout, n, 5),
    })
}

/// Hypotheses `x in [t, t + (N-1)/2]` and its complement, with `t` ranging
/// over the training inputs and zero; the training set picks the best.
fn threshold_baseline(
    train: &[LabeledSample],
    heldout: &[LabeledSample],
    n: &BigUint,
) -> f64 {
    let mut candidates: Vec<BigUint> = train.iter().map(|s| s.x.clone()).collect();
    candidates.push(BigUint::zero());
    let mut best: Option<(usize, &BigUint, bool)> = None;
    for t in &candidates {
        for invert in [false, true] {
            let correct = train
                .iter()
                .filter(|s| (in_upper_half_interval(&s.x, t, n) ^ invert) == s.label)
                .count();
            if best.map_or(true, |(b, _, _)| correct > b) {
                best = Some((correct, t, invert));
            }
        }
    }
    let (_, t, invert) = best.expect("candidates nonempty");
    accuracy(heldout, |x| in_upper_half_interval(x, t, n) ^ invert)
}

fn bit_features(x: &BigUint, width: u64) -> Vec<f64> {
    let mut f: Vec<f64> = (0..width)
        .map(|i| if x.bit(i) { 1.0 } else { -1.0 })
        .collect();
    f.push(1.0); // bias
    f
}

/// Pocket perceptron over the bits of `x`.
fn perceptron_baseline(
    train: &[LabeledSample],
    heldout: &[LabeledSample],
    n: &BigUint,
) -> f64 {
    let width = n.bits();
    let dim = width as usize + 1;
    let features: Vec<Vec<f64>> = train.iter().map(|s| bit_features(&s.x, width)).collect();
    let targets: Vec<f64> = train
        .iter()
        .map(|s| if s.label { 1.0 } else { -1.0 })
        .collect();
    let mut w = vec![0.0f64; dim];
    let mut pocket = w.clone();
    let mut pocket_correct = 0usize;
    for _epoch in 0..25 {
        for (f, y) in features.iter().zip(&targets) {
            let score: f64 = w.iter().zip(f).map(|(wi, fi)| wi * fi).sum();
            if score * y <= 0.0 {
                for (wi, fi) in w.iter_mut().zip(f) {
                    *wi += y * fi;
                }
            }
        }
        let correct = features
            .iter()
            .zip(&targets)
            .filter(|(f, y)| {
                let score: f64 = w.iter().zip(*f).map(|(wi, fi)| wi * fi).sum();
                (score >= 0.0) == (**y > 0.0)
            })
            .count();
        if correct > pocket_correct {
            pocket_correct = correct;
            pocket.clone_from(&w);
        }
    }
    accuracy(heldout, |x| {
        let f = bit_features(x, width);
        pocket.iter().zip(&f).map(|(wi, fi)| wi * fi).sum::<f64>() >= 0.0
    })
}

/// Majority vote among the `k` training points closest in circular
/// distance `min(|x - x'|, N - |x - x'|)`.
fn knn_baseline(
    train: &[LabeledSample],
    heldout: &[LabeledSample],
    n: &BigUint,
    k: usize,
) -> f64 {
    let k = k.min(train.len());
    accuracy(heldout, |x| {
        let mut dists: Vec<(BigUint, bool)> = train
            .iter()
            .map(|s| {
                let raw = if s.x > *x { &s.x - x } else { x - &s.x };
                let wrapped = n - &raw;
                (raw.min(wrapped), s.label)
            })
            .collect();
        dists.sort_by(|a, b| a.0.cmp(&b.0));
        let ones = dists.iter().take(k).filter(|(_, l)| *l).count();
        2 * ones > k
    })
}

fn accuracy<F: Fn(&BigUint) -> bool>(heldout: &[LabeledSample], predict: F) -> f64 {
    let correct = heldout.iter().filter(|s| predict(&s.x) == s.label).count();
    correct as f64 / heldout.len() as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn plain_threshold_world(n_val: u32, count: u32) -> Vec<LabeledSample> {
        // labels x <= (N-1)/2 directly: the unobfuscated d' = 1 world
        let n = BigUint::from(n_val);
        let half = (&n - 1u32) >> 1;
        (0..count)
            .map(|v| {
                let x = BigUint::from(v % n_val);
                let label = x <= half;
                LabeledSample { x, label }
            })
            .collect()
    }

    #[test]
    fn baselines_learn_unobfuscated_thresholds() {
        let n = BigUint::from(1009u32);
        let train = plain_threshold_world(1009, 300);
        let heldout = plain_threshold_world(1009, 1000);
        let report = classical_baseline(&train, &heldout, &n).unwrap();
        assert!(
            report.threshold_accuracy >= 0.95,
            "threshold baseline failed a sanity-check world: {report:?}"
        );
    }

    #[test]
    fn degenerate_small_modulus_still_reports() {
        let n = BigUint::from(3u32);
        let data = vec![
            LabeledSample {
                x: BigUint::from(0u32),
                label: true,
            },
            LabeledSample {
                x: BigUint::from(1u32),
                label: true,
            },
            LabeledSample {
                x: BigUint::from(2u32),
                label: false,
            },
        ];
        let report = classical_baseline(&data, &data, &n).unwrap();
        assert!(report.best() <= 1.0 && report.best() >= 0.0);
    }

    #[test]
    fn empty_sets_rejected() {
        let n = BigUint::from(55u32);
        assert!(classical_baseline(&[], &[], &n).is_err());
    }
}
