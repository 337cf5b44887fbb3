//! Unitary three-level dynamics, the analytic su(2) solution and the
//! two-level reference system.

mod analytic;
mod residual;
mod schrodinger;
mod state;

pub use analytic::{
    analytic_psi1_jet, analytic_state, fit_constants, fit_constants_detailed, fit_constants_to_state, psi1_derivatives,
    AnalyticConstants, FitDiagnostics, DEFAULT_FIT_TIME, MAX_CONDITION,
};
pub use residual::{
    ode3_coefficients, ode3_residual, ode3_residual_sampled, ode3_residual_with_step, AnalyticPsi1, NumericPsi1,
    Psi1Source, RESIDUAL_STEP,
};
pub use schrodinger::{
    evolve_state, propagator, propagator2, schrodinger_rhs, spin_half_hamiltonian, two_level_evolve,
    two_level_hamiltonian, TwoLevelParams,
};
pub use state::{purity, Record, StateVector3, Trajectory, NORM_TOL};
