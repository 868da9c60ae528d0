//! Dissipative two-qubit dynamics: entropy and entanglement rates.
//!
//! This crate evolves two-qubit states under a Lindblad semigroup whose
//! Kossakowski matrix carries a single asymmetry parameter `alpha`, computes
//! the quantum relative entropy to the asymptotic state and the relative
//! entropy of entanglement (REE) along trajectories, and compares the entropy
//! rate against the entanglement rate.
//!
//! Conventions, fixed crate-wide:
//!
//! * **Natural logarithms everywhere** — every entropy, relative entropy and
//!   REE value is in nats.
//! * **Time units** absorb the overall dissipative strength: the generator's
//!   decay constants are the dimensionless 4, 8, 12 of the model, so `t` is
//!   measured in units of the inverse dissipation rate.
//! * The system frequency `omega` only enters phase factors of coherences
//!   between the Bell-like basis states; it cancels for the diagonal family.
//! * The closed-form propagator requires `|alpha| < 1`; at the boundary
//!   `|alpha| = 1` the RK4 integrator covers evolution.

pub mod entanglement;
pub mod entropy;
pub mod error;
pub mod matrix;
pub mod propagator;
pub mod runner;
pub mod state;

pub use error::{Error, Result};
pub use state::{DensityMatrix, FamilyState};
