use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qsim::{PauliLetter, PauliString};

/// Data-dependent weight family `x -> (w_1(x), ..., w_m(x))` with a declared
/// bound `B >= max_x sum_j |w_j(x)|`.
///
/// Families are named built-ins so that model files can carry them by value.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum WeightFamily {
    /// Weights independent of the input.
    Constant { values: Vec<f64> },
    /// `w_j(x) = intercept_j + slope_j . x`, with an explicitly declared
    /// bound valid on the intended input domain.
    Affine {
        intercepts: Vec<f64>,
        slopes: Vec<Vec<f64>>,
        bound: f64,
    },
    /// Expansion weights of the product observable
    /// `O(x) = prod_i RY(x_i)|0><0|RY(x_i)^dag` over `{I, X, Z}`-strings:
    /// per qubit, I carries 1, X carries sin(2 x_i), Z carries cos(2 x_i),
    /// all divided by 2 per qubit. Term order matches
    /// [`rotated_projector_paulis`].
    RotatedProjector { qubits: usize },
}

impl WeightFamily {
    /// Number of terms `m`.
    pub fn term_count(&self) -> usize {
        match self {
            WeightFamily::Constant { values } => values.len(),
            WeightFamily::Affine { intercepts, .. } => intercepts.len(),
            WeightFamily::RotatedProjector { qubits } => 3usize.pow(*qubits as u32),
        }
    }

    /// Declared bound `B` on `sum_j |w_j(x)|`.
    pub fn bound(&self) -> f64 {
        match self {
            WeightFamily::Constant { values } => values.iter().map(|v| v.abs()).sum(),
            WeightFamily::Affine { bound, .. } => *bound,
            // per qubit: max over x of (1 + |sin| + |cos|) / 2 = (1 + sqrt 2) / 2
            WeightFamily::RotatedProjector { qubits } => {
                ((1.0 + std::f64::consts::SQRT_2) / 2.0).powi(*qubits as i32)
            }
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            WeightFamily::Constant { values } => {
                if values.iter().any(|v| !v.is_finite()) {
                    return Err(Error::invalid("weights", "non-finite constant weight"));
                }
            }
            WeightFamily::Affine {
                intercepts,
                slopes,
                bound,
            } => {
                if slopes.len() != intercepts.len() {
                    return Err(Error::invalid(
                        "weights",
                        "affine slopes and intercepts differ in length",
                    ));
                }
                if !bound.is_finite() || *bound < 0.0 {
                    return Err(Error::invalid("weights", "affine bound must be finite and >= 0"));
                }
                let d = slopes.first().map(Vec::len).unwrap_or(0);
                if slopes.iter().any(|s| s.len() != d) {
                    return Err(Error::invalid("weights", "ragged affine slope rows"));
                }
            }
            WeightFamily::RotatedProjector { qubits } => {
                if *qubits == 0 || *qubits > 12 {
                    return Err(Error::invalid("weights", "rotated projector supports 1..=12 qubits"));
                }
            }
        }
        Ok(())
    }

    /// Evaluate the family at `x`, enforcing the declared bound.
    pub fn evaluate(&self, x: &[f64]) -> Result<Vec<f64>> {
        let w = match self {
            WeightFamily::Constant { values } => values.clone(),
            WeightFamily::Affine {
                intercepts, slopes, ..
            } => {
                let d = slopes.first().map(Vec::len).unwrap_or(0);
                if x.len() < d {
                    return Err(Error::DimensionMismatch {
                        expected: d,
                        got: x.len(),
                    });
                }
                intercepts
                    .iter()
                    .zip(slopes)
                    .map(|(c, row)| c + row.iter().zip(x).map(|(a, xi)| a * xi).sum::<f64>())
                    .collect()
            }
            WeightFamily::RotatedProjector { qubits } => {
                if x.len() != *qubits {
                    return Err(Error::DimensionMismatch {
                        expected: *qubits,
                        got: x.len(),
                    });
                }
                let mut w = Vec::with_capacity(self.term_count());
                for code in 0..self.term_count() {
                    let mut value = 0.5f64.powi(*qubits as i32);
                    let mut rem = code;
                    // qubit 0 is the most significant base-3 digit
                    for q in (0..*qubits).rev() {
                        let digit = rem % 3;
                        rem /= 3;
                        value *= match digit {
                            0 => 1.0,
                            1 => (2.0 * x[q]).sin(),
                            _ => (2.0 * x[q]).cos(),
                        };
                    }
                    w.push(value);
                }
                w
            }
        };
        let total: f64 = w.iter().map(|v| v.abs()).sum();
        let bound = self.bound();
        if total > bound + 1e-9 {
            return Err(Error::WeightBound {
                actual: total,
                bound,
            });
        }
        Ok(w)
    }
}

/// Pauli strings over `{I, X, Z}` per qubit, aligned with
/// [`WeightFamily::RotatedProjector`]: base-3 digits I, X, Z with qubit 0
/// as the most significant digit.
pub fn rotated_projector_paulis(qubits: usize) -> Vec<PauliString> {
    let m = 3usize.pow(qubits as u32);
    let mut out = Vec::with_capacity(m);
    for code in 0..m {
        let mut letters = vec![PauliLetter::I; qubits];
        let mut rem = code;
        for q in (0..qubits).rev() {
            letters[q] = match rem % 3 {
                0 => PauliLetter::I,
                1 => PauliLetter::X,
                _ => PauliLetter::Z,
            };
            rem /= 3;
        }
        out.push(PauliString::new(letters));
    }
    out
}
