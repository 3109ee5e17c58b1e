//! Conventional and flipped linear models, exact and sampling-based
//! evaluation, and Hoeffding sample sizing.

mod conventional;
mod flipped;
mod sampling;
mod weights;

pub use conventional::{
    circuit_unitary, eval_conventional_exact, ConventionalLinearModel, Encoder, EncoderGate,
    ObservableTerm,
};
pub use flipped::{eval_flipped_exact, eval_flipped_sampled, FlippedLinearModel};
pub use sampling::{required_samples, NormLedger};
pub use weights::{rotated_projector_paulis, WeightFamily};

pub(crate) use flipped::measure_pauli_mean;
pub(crate) use sampling::check_tolerances;
