//! Adaptive Runge–Kutta and Euler–Maruyama integrators for complex systems.

mod grid;
mod rk;
mod sde;

pub use grid::{TimeGrid, MAX_GRID_POINTS};
pub use rk::{rk_adaptive, DenseOutput, IntegratorConfig, RkSolution, RkStats};
pub(crate) use sde::{check_dt, substeps};
pub use sde::{euler_maruyama, NoiseTerm, NormalStream};
