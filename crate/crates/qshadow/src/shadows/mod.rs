//! Pauli classical shadows: randomized snapshot collection, inverse-channel
//! estimators with median-of-means aggregation, shadow-model evaluation and
//! measurement-budget sizing.
//!
//! Layering: [`estimate`] is pure post-processing of recorded snapshots and
//! never evolves a state; only [`collect`] touches the simulator.

mod collect;
mod estimate;
mod snapshot;

pub use collect::{collect_pauli_shadow, estimate_pauli_direct, seeded_rng};
pub use estimate::{
    estimate_pauli, shadow_model_eval, shadow_sample_bound, single_snapshot_estimate,
};
pub use snapshot::{MoMConfig, PauliShadow, ShadowSnapshot};
