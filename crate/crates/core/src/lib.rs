//! Three-level Landau–Zener dynamics.
//!
//! Hamiltonian construction for linearly swept su(2) and su(3) three-level
//! systems, unitary and Lindblad propagation, stochastic Schrödinger–Langevin
//! ensembles, Liouvillian spectra, and the closed-form su(2) solution in terms
//! of parabolic cylinder functions.

pub mod algebra;
pub mod closed;
pub mod error;
mod linalg;
pub mod open;
pub mod propagate;
pub mod specfun;

pub use error::{Error, Result};
