//! Desk-scale laboratory for flipped quantum linear models and their
//! classical shadows.
//!
//! The crate provides:
//!
//! - [`qsim`]: an exact statevector / density-operator simulator with the
//!   gate set the model constructions need;
//! - [`models`]: conventional and flipped linear models, exact and
//!   sampling-based evaluation, and Hoeffding-style sample sizing;
//! - [`shadows`]: Pauli classical shadows with median-of-means estimation,
//!   plus direct per-Pauli eigenbasis estimation;
//! - [`flipper`]: the constructive conventional-to-flipped mapping and its
//!   importance-sampled evaluation loop;
//! - [`dcr`]: the discrete cube root learning task (trapdoor keys, data
//!   generation, the factoring-based learner and classical baselines);
//! - [`fourier`]: the product-encoded search model, black-box corner
//!   search, and its one-measurement flipped recovery;
//! - [`fixtures`]: seeded random instances shared by tests and the CLI.

pub mod dcr;
pub mod error;
pub mod fixtures;
pub mod flipper;
pub mod fourier;
pub mod models;
pub mod qsim;
pub mod rng;
pub mod shadows;

pub use error::{Error, Result};
