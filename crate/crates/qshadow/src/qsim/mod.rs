//! Minimal exact simulator: statevectors, dense density operators, the
//! small gate set used by the model constructions, Pauli expectations and
//! Born-rule sampling.
//!
//! All values are immutable after construction and all operations are pure
//! functions of their inputs; randomness enters only through explicitly
//! passed RNG streams.

mod circuit;
mod density;
mod pauli;
mod state;

pub use circuit::{CircuitSpec, Gate};
pub use density::{
    expval_dense, hermitian_deviation, DensityOperator, MAX_DENSE_QUBITS,
};
pub use pauli::{PauliBasis, PauliLetter, PauliString};
pub use state::{bits_to_string, Statevector, MAX_STATEVECTOR_QUBITS};
