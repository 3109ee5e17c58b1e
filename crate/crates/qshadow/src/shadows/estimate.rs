//! Classical-side estimation from recorded snapshots.
//!
//! Nothing in this module prepares or evolves quantum states: shadow-model
//! evaluation is pure post-processing of the advice, which is what makes
//! the deployment phase classical.

use crate::error::{Error, Result};
use crate::models::FlippedLinearModel;
use crate::qsim::{PauliLetter, PauliString};
use crate::shadows::snapshot::{MoMConfig, PauliShadow, ShadowSnapshot};

/// Single-snapshot inverse-channel estimate of `<P>`:
/// `prod_{q in support} 3 s_q` when the snapshot measured every support
/// qubit in `P`'s basis (`s_q = +-1` from the outcome bit), else 0.
/// The empty product makes the identity string read exactly 1.
pub fn single_snapshot_estimate(snapshot: &ShadowSnapshot, p: &PauliString) -> f64 {
    let mut value = 1.0;
    for (q, letter) in p.letters().iter().enumerate() {
        let basis = match letter {
            PauliLetter::I => continue,
            PauliLetter::X => crate::qsim::PauliBasis::X,
            PauliLetter::Y => crate::qsim::PauliBasis::Y,
            PauliLetter::Z => crate::qsim::PauliBasis::Z,
        };
        if snapshot.bases[q] != basis {
            return 0.0;
        }
        value *= if snapshot.outcomes[q] { -3.0 } else { 3.0 };
    }
    value
}

/// Median-of-means estimate of `<P>` from a Pauli shadow.
pub fn estimate_pauli(shadow: &PauliShadow, p: &PauliString, cfg: MoMConfig) -> Result<f64> {
    shadow.validate()?;
    cfg.validate(shadow.len())?;
    if p.n() != shadow.n {
        return Err(Error::DimensionMismatch {
            expected: shadow.n,
            got: p.n(),
        });
    }
    let t = shadow.len();
    let k = cfg.groups;
    let base = t / k;
    let rem = t % k;
    let mut means = Vec::with_capacity(k);
    let mut start = 0usize;
    for g in 0..k {
        let size = base + usize::from(g < rem);
        // estimates are signed powers of 3; the i64 sum is exact
        let mut acc = 0i64;
        for snapshot in &shadow.snapshots[start..start + size] {
            acc += single_snapshot_estimate(snapshot, p) as i64;
        }
        means.push(acc as f64 / size as f64);
        start += size;
    }
    means.sort_by(|a, b| a.partial_cmp(b).expect("group means are finite"));
    // even group counts resolve to the lower-middle value
    Ok(means[(k - 1) / 2])
}

/// Classical evaluation of a flipped model from its shadow:
/// `sum_j w_j(x) . estimate_pauli(shadow, P_j)`.
pub fn shadow_model_eval(
    shadow: &PauliShadow,
    model: &FlippedLinearModel,
    x: &[f64],
    cfg: MoMConfig,
) -> Result<f64> {
    model.validate()?;
    if model.n != shadow.n {
        return Err(Error::DimensionMismatch {
            expected: shadow.n,
            got: model.n,
        });
    }
    let w = model.weights.evaluate(x)?;
    let mut value = 0.0;
    for (wj, pj) in w.iter().zip(&model.paulis) {
        if *wj != 0.0 {
            value += wj * estimate_pauli(shadow, pj, cfg)?;
        }
    }
    Ok(value)
}

/// Measurement budget for the median-of-means Pauli shadow: `K` groups of
/// `ceil(68 . 3^k . B^2 / epsilon^2)` snapshots each, with
/// `K = ceil(2 ln(2m/delta))`. Returns `(T, K)` with `T` clamped up to `K`
/// so every group holds at least one snapshot.
///
/// The constants follow the standard median-of-means shadow analysis; the
/// scaling in `3^k`, `B` and `epsilon` is what the guarantee fixes.
pub fn shadow_sample_bound(
    k: usize,
    bound: f64,
    epsilon: f64,
    delta: f64,
    m: usize,
) -> Result<(u64, u64)> {
    if !(bound >= 0.0) || !bound.is_finite() {
        return Err(Error::invalid("bound", "must be finite and >= 0"));
    }
    if m == 0 {
        return Err(Error::invalid("m", "term count must be >= 1"));
    }
    crate::models::check_tolerances(epsilon, delta)?;
    let groups = (2.0 * (2.0 * m as f64 / delta).ln()).ceil().max(1.0) as u64;
    let per_group =
        (68.0 * 3f64.powi(k as i32) * bound * bound / (epsilon * epsilon)).ceil() as u64;
    Ok((groups * per_group.max(1), groups))
}
