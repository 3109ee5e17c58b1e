use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Trace and spectral norms of an observable, computed or declared.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormLedger {
    /// `||O||_1`, sum of singular values.
    pub trace_norm: f64,
    /// `||O||_inf`, largest singular value.
    pub spectral_norm: f64,
}

impl NormLedger {
    pub fn new(trace_norm: f64, spectral_norm: f64) -> Result<Self> {
        let ledger = NormLedger {
            trace_norm,
            spectral_norm,
        };
        ledger.validate()?;
        Ok(ledger)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.spectral_norm >= 0.0 && self.trace_norm >= self.spectral_norm - 1e-12) {
            return Err(Error::invalid(
                "norms",
                format!(
                    "need trace_norm >= spectral_norm >= 0, got {} < {}",
                    self.trace_norm, self.spectral_norm
                ),
            ));
        }
        Ok(())
    }
}

/// Shots sufficient to estimate the mean of a `[-B, B]`-valued variable to
/// additive error `epsilon` with probability `1 - delta`, by the two-sided
/// Hoeffding inequality: `ceil(2 B^2 ln(2/delta) / epsilon^2)`.
pub fn required_samples(spectral_norm: f64, epsilon: f64, delta: f64) -> Result<u64> {
    if !(spectral_norm >= 0.0) || !spectral_norm.is_finite() {
        return Err(Error::invalid("spectral_norm", "must be finite and >= 0"));
    }
    check_tolerances(epsilon, delta)?;
    if spectral_norm == 0.0 {
        return Ok(0);
    }
    let n = 2.0 * spectral_norm * spectral_norm * (2.0 / delta).ln() / (epsilon * epsilon);
    Ok(n.ceil() as u64)
}

pub(crate) fn check_tolerances(epsilon: f64, delta: f64) -> Result<()> {
    if !(epsilon > 0.0) || !epsilon.is_finite() {
        return Err(Error::invalid("epsilon", "must be finite and > 0"));
    }
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::invalid("delta", "must lie in (0, 1)"));
    }
    Ok(())
}
