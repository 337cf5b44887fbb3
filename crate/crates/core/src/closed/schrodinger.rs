use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::state::{Record, StateVector3, Trajectory};
use crate::algebra::{apply_hamiltonian, ComplexMatrix2, ComplexMatrix3, Hamiltonian3, LZParams, Vector3};
use crate::error::{Error, Result};
use crate::propagate::{rk_adaptive, IntegratorConfig, TimeGrid};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// `dψ/dt = −i H(t) ψ` for the three-level sweep.
pub fn schrodinger_rhs(p: &LZParams) -> impl Fn(f64, &Vector3) -> Vector3 + '_ {
    move |t, psi| {
        let h = apply_hamiltonian(p, t, psi);
        [-I * h[0], -I * h[1], -I * h[2]]
    }
}

/// Unitary evolution of `ψ0`, sampled on `grid`.
pub fn evolve_state<H: Hamiltonian3 + ?Sized>(
    h: &H,
    psi0: &StateVector3,
    grid: &TimeGrid,
    cfg: &IntegratorConfig,
) -> Result<Trajectory> {
    let sol = rk_adaptive(
        |t, y, dy| {
            let v = h.at(t).mul_vec(&[y[0], y[1], y[2]]);
            for k in 0..3 {
                dy[k] = -I * v[k];
            }
        },
        &psi0.0,
        grid,
        cfg,
    )?;
    let records = sol.states.iter().map(|s| Record::from_state(&[s[0], s[1], s[2]])).collect();
    Ok(Trajectory { times: sol.times, records })
}

/// Propagators `U(t, t0)` at every grid time.
pub fn propagator<H: Hamiltonian3 + ?Sized>(
    h: &H,
    grid: &TimeGrid,
    cfg: &IntegratorConfig,
) -> Result<Vec<ComplexMatrix3>> {
    let y0 = ComplexMatrix3::identity().to_vec_col();
    let sol = rk_adaptive(
        |t, y, dy| {
            let hm = h.at(t);
            for j in 0..3 {
                for i in 0..3 {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for k in 0..3 {
                        acc += hm[(i, k)] * y[k + 3 * j];
                    }
                    dy[i + 3 * j] = -I * acc;
                }
            }
        },
        &y0,
        grid,
        cfg,
    )?;
    Ok(sol.states.iter().map(|s| ComplexMatrix3::from_vec_col(s)).collect())
}

/// Two-level sweep `[[a t, Δ(t)], [Δ(t), −a t]]`, optionally with the Gaussian
/// envelope `exp(−(t / 2σ)²)` on `Δ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TwoLevelParams {
    pub a: f64,
    pub delta: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pulse_sigma: Option<f64>,
}

impl TwoLevelParams {
    pub fn new(a: f64, delta: f64) -> Self {
        Self { a, delta, pulse_sigma: None }
    }

    pub fn with_pulse(mut self, sigma: f64) -> Self {
        self.pulse_sigma = Some(sigma);
        self
    }

    pub fn validate(&self) -> Result<()> {
        LZParams { a: self.a, delta: self.delta, omega: self.delta, pulse_sigma: self.pulse_sigma }.validate()
    }

    pub fn delta_at(&self, t: f64) -> f64 {
        LZParams { a: self.a, delta: self.delta, omega: self.delta, pulse_sigma: self.pulse_sigma }.delta_at(t)
    }
}

pub fn two_level_hamiltonian(p: &TwoLevelParams, t: f64) -> ComplexMatrix2 {
    let at = Complex64::new(p.a * t, 0.0);
    let d = Complex64::new(p.delta_at(t), 0.0);
    ComplexMatrix2([[at, d], [d, -at]])
}

/// `(a t / 2) σ_z + (Δ(t) / √2) σ_x`, whose symmetric square is the
/// three-level Hamiltonian with `Ω = Δ`.
pub fn spin_half_hamiltonian(p: &LZParams, t: f64) -> ComplexMatrix2 {
    let hz = Complex64::new(0.5 * p.a * t, 0.0);
    let hx = Complex64::new(p.delta_at(t) * std::f64::consts::FRAC_1_SQRT_2, 0.0);
    ComplexMatrix2([[hz, hx], [hx, -hz]])
}

/// Two-level evolution; records carry `(P₁, P₂, 0)`.
pub fn two_level_evolve(
    p: &TwoLevelParams,
    psi0: [Complex64; 2],
    grid: &TimeGrid,
    cfg: &IntegratorConfig,
) -> Result<Trajectory> {
    p.validate()?;
    let n: f64 = psi0.iter().map(|c| c.norm_sqr()).sum();
    if (n - 1.0).abs() > super::state::NORM_TOL {
        return Err(Error::InvalidParameter(format!("state is not normalized (|psi|^2 = {n})")));
    }
    let sol = rk_adaptive(
        |t, y, dy| {
            let v = two_level_hamiltonian(p, t).mul_vec(&[y[0], y[1]]);
            dy[0] = -I * v[0];
            dy[1] = -I * v[1];
        },
        &psi0,
        grid,
        cfg,
    )?;
    let records = sol.states.iter().map(|s| Record::from_state(&[s[0], s[1], Complex64::new(0.0, 0.0)])).collect();
    Ok(Trajectory { times: sol.times, records })
}

/// Two-level propagators `u(t, t0)` for an arbitrary generator.
pub fn propagator2<F>(h: F, grid: &TimeGrid, cfg: &IntegratorConfig) -> Result<Vec<ComplexMatrix2>>
where
    F: Fn(f64) -> ComplexMatrix2,
{
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    // column-major: u00, u10, u01, u11
    let y0 = [one, zero, zero, one];
    let sol = rk_adaptive(
        |t, y, dy| {
            let m = h(t).0;
            for j in 0..2 {
                for i in 0..2 {
                    dy[i + 2 * j] = -I * (m[i][0] * y[2 * j] + m[i][1] * y[1 + 2 * j]);
                }
            }
        },
        &y0,
        grid,
        cfg,
    )?;
    Ok(sol.states.iter().map(|s| ComplexMatrix2([[s[0], s[2]], [s[1], s[3]]])).collect())
}
