//! Success probability of the QAOA ansatz on linear Ising models.
//!
//! For `H(s) = Σ a_ℓ s_ℓ` the ansatz state is a product of single-qubit
//! states, so the probability of sampling the optimum is a product of
//! per-qubit terms. This crate evaluates that product exactly, checks it
//! against a dense statevector simulation, maximizes it over the ansatz
//! angles with a portfolio of derivative-free optimizers, and runs the
//! experiments built on top: probability tables, the exponential sampling
//! cost of replicated models, and a classical sign-bit circuit.

pub mod error;
pub mod experiments;
pub mod gate;
pub mod ising;
pub mod optimize;
pub mod probability;
pub mod statevector;
pub mod verify;

pub use error::{Error, Result};
pub use gate::{Complex, Gate2, Qubit};
pub use ising::{BitString, LinearIsing, SpinString};
pub use optimize::{OptimizationResult, OptimizerSpec};
pub use probability::{prob_opt, QaoaParams, RuntimeEstimate};
