//! Dissipative dynamics: Lindblad master equation with spin-1 jump
//! operators, the Liouvillian superoperator and its spectrum, and Langevin
//! pure-state trajectories.

mod density;
mod langevin;
mod liouvillian;
mod master;

pub use density::{DensityMatrix3, NoiseSpec, DEFAULT_XI};
pub use langevin::{ensemble_average, langevin_ensemble, langevin_trajectory, EnsembleAverage};
pub use liouvillian::{liouvillian_matrix, liouvillian_spectrum, steady_state, SpectralDecomposition, Superoperator};
pub use master::{dissipator, evolve_density, lindblad_rhs, DensityEvolution, PositivityLoss, POSITIVITY_WARN};
