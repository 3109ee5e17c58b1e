//! The discrete cube root learning task: trapdoor modulus generation,
//! concept labeling and data generation, the factoring-based learner with
//! its one-record advice, and classical baselines that never factor.

mod baseline;
mod concept;
mod factor;
mod learn;
mod modulus;
mod primes;
mod serde_util;

pub use baseline::{classical_baseline, BaselineReport};
pub use concept::{concept_label, generate_dataset, DcrConcept, LabeledSample};
pub use factor::factor_semiprime;
pub use learn::{hypothesis_eval, quantum_learn, required_training_size, Hypothesis};
pub use modulus::{
    cube, cube_root, generate_modulus, in_upper_half_interval, DcrModulus,
};
pub use primes::{is_probable_prime, MILLER_RABIN_ROUNDS};
