use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qsim::state::Statevector;

/// Largest qubit count for dense operators (desk-scale memory budget).
pub const MAX_DENSE_QUBITS: usize = 10;

const HERMITIAN_TOL: f64 = 1e-10;
const TRACE_TOL: f64 = 1e-10;
const EIGEN_TOL: f64 = 1e-10;

/// Dense n-qubit density operator. Construction validates Hermiticity,
/// unit trace and positive semi-definiteness.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityOperator {
    n: usize,
    matrix: DMatrix<Complex64>,
}

impl DensityOperator {
    pub fn new(n: usize, matrix: DMatrix<Complex64>) -> Result<Self> {
        check_dense_budget(n)?;
        let dim = 1usize << n;
        if matrix.nrows() != dim || matrix.ncols() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: matrix.nrows(),
            });
        }
        let dev = hermitian_deviation(&matrix);
        if dev > HERMITIAN_TOL {
            return Err(Error::NotHermitian { deviation: dev });
        }
        let trace = matrix.trace();
        if (trace.re - 1.0).abs() > TRACE_TOL || trace.im.abs() > TRACE_TOL {
            return Err(Error::BadTrace { trace: trace.re });
        }
        let eigenvalues = matrix.clone().symmetric_eigen().eigenvalues;
        if let Some(min) = eigenvalues.iter().cloned().reduce(f64::min) {
            if min < -EIGEN_TOL {
                return Err(Error::NotPositive { eigenvalue: min });
            }
        }
        Ok(DensityOperator { n, matrix })
    }

    /// Pure-state density operator `|psi><psi|`.
    pub fn from_statevector(psi: &Statevector) -> Result<Self> {
        check_dense_budget(psi.n())?;
        let dim = psi.amplitudes().len();
        let mut m = DMatrix::from_element(dim, dim, Complex64::new(0.0, 0.0));
        for (i, a) in psi.amplitudes().iter().enumerate() {
            for (j, b) in psi.amplitudes().iter().enumerate() {
                m[(i, j)] = a * b.conj();
            }
        }
        DensityOperator::new(psi.n(), m)
    }

    /// Maximally mixed state `I / 2^n`.
    pub fn maximally_mixed(n: usize) -> Result<Self> {
        check_dense_budget(n)?;
        let dim = 1usize << n;
        let m = DMatrix::from_diagonal_element(
            dim,
            dim,
            Complex64::new(1.0 / dim as f64, 0.0),
        );
        DensityOperator::new(n, m)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    /// `Tr[rho . obs]` for a Hermitian observable given as a dense matrix.
    /// The trace is accumulated without forming the product matrix; the
    /// imaginary residue is checked before being discarded.
    pub fn expval(&self, obs: &DMatrix<Complex64>) -> Result<f64> {
        expval_dense(&self.matrix, obs)
    }
}

/// `Tr[rho . obs]` for dense Hermitian `rho`-like and `obs` matrices.
pub fn expval_dense(rho: &DMatrix<Complex64>, obs: &DMatrix<Complex64>) -> Result<f64> {
    if rho.nrows() != obs.nrows() || rho.ncols() != obs.ncols() || rho.nrows() != rho.ncols() {
        return Err(Error::DimensionMismatch {
            expected: rho.nrows(),
            got: obs.nrows(),
        });
    }
    let dev = hermitian_deviation(obs);
    if dev > 1e-8 {
        return Err(Error::NotHermitian { deviation: dev });
    }
    // Tr[A B] = sum_ij A_ij B_ji
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..rho.nrows() {
        for j in 0..rho.ncols() {
            acc += rho[(i, j)] * obs[(j, i)];
        }
    }
    if acc.im.abs() > 1e-8 {
        return Err(Error::invalid(
            "expval",
            format!("imaginary residue {:e} exceeds 1e-8", acc.im),
        ));
    }
    Ok(acc.re)
}

/// Max entrywise deviation from `A = A^dagger`.
pub fn hermitian_deviation(m: &DMatrix<Complex64>) -> f64 {
    let mut dev: f64 = 0.0;
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            dev = dev.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    dev
}

fn check_dense_budget(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::invalid("n", "qubit count must be at least 1"));
    }
    if n > MAX_DENSE_QUBITS {
        return Err(Error::QubitLimit {
            role: "dense operator",
            limit: MAX_DENSE_QUBITS,
            n,
        });
    }
    Ok(())
}
