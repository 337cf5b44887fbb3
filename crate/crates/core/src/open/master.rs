use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::density::{hermitian_part, DensityMatrix3, NoiseSpec};
use crate::algebra::{eigenvalues_hermitian3, spin1_matrices, ComplexMatrix3, Hamiltonian3};
use crate::closed::{Record, Trajectory};
use crate::error::Result;
use crate::propagate::{rk_adaptive, IntegratorConfig, TimeGrid};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Smallest eigenvalue below which a positivity warning is recorded.
pub const POSITIVITY_WARN: f64 = -1e-6;

/// Positivity diagnostic: `ρ(t)` had an eigenvalue below [`POSITIVITY_WARN`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PositivityLoss {
    pub t: f64,
    pub min_eigenvalue: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DensityEvolution {
    pub trajectory: Trajectory,
    pub warnings: Vec<PositivityLoss>,
}

/// `½ Σⱼ ξ₀ⱼ² (2 Sⱼ ρ Sⱼ − ρ Sⱼ² − Sⱼ² ρ)`.
pub fn dissipator(n: &NoiseSpec, rho: &ComplexMatrix3) -> ComplexMatrix3 {
    let (sx, sy, sz) = spin1_matrices();
    let mut out = ComplexMatrix3::from_fn(|_, _| Complex64::new(0.0, 0.0));
    for (s, xi) in [sx, sy, sz].into_iter().zip(n.xi) {
        if xi == 0.0 {
            continue;
        }
        let s2 = s * s;
        let term = (s * *rho * s).scale_re(2.0) - *rho * s2 - s2 * *rho;
        out += term.scale_re(0.5 * xi * xi);
    }
    out
}

/// `dρ/dt = −i[H(t), ρ] + D(ρ)`.
pub fn lindblad_rhs<'a, H: Hamiltonian3 + ?Sized>(
    h: &'a H,
    n: &'a NoiseSpec,
) -> impl Fn(f64, &ComplexMatrix3) -> ComplexMatrix3 + 'a {
    move |t, rho| {
        let hm = h.at(t);
        (hm * *rho - *rho * hm).scale(-I) + dissipator(n, rho)
    }
}

/// Integrates the master equation from `rho0` across `grid`.
///
/// Records carry populations, trace, purity and the full matrix. Negative
/// eigenvalues below [`POSITIVITY_WARN`] are reported, not corrected.
pub fn evolve_density<H: Hamiltonian3 + ?Sized>(
    h: &H,
    n: &NoiseSpec,
    rho0: &DensityMatrix3,
    grid: &TimeGrid,
    cfg: &IntegratorConfig,
) -> Result<DensityEvolution> {
    n.validate()?;
    let rhs = lindblad_rhs(h, n);
    let sol = rk_adaptive(
        |t, y, dy| {
            let d = rhs(t, &ComplexMatrix3::from_vec_col(y));
            dy.copy_from_slice(&d.to_vec_col());
        },
        &rho0.0.to_vec_col(),
        grid,
        cfg,
    )?;
    let mut warnings = Vec::new();
    let mut records = Vec::with_capacity(sol.states.len());
    for (t, y) in sol.times.iter().zip(&sol.states) {
        let rho = ComplexMatrix3::from_vec_col(y);
        let min = eigenvalues_hermitian3(&hermitian_part(&rho))?[0];
        if min < POSITIVITY_WARN {
            warnings.push(PositivityLoss { t: *t, min_eigenvalue: min });
        }
        records.push(Record::from_density(&rho));
    }
    Ok(DensityEvolution { trajectory: Trajectory { times: sol.times, records }, warnings })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::LZParams;

    fn random_rho(seed: u64) -> ComplexMatrix3 {
        let mut x = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        let mut next = || {
            x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (x >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        };
        let a = ComplexMatrix3::from_fn(|_, _| Complex64::new(next(), next()));
        let m = a * a.dagger();
        let tr = m.trace().re;
        m.scale_re(1.0 / tr)
    }

    #[test]
    fn zero_noise_is_von_neumann() {
        let p = LZParams::new(1.0, 2.0, 1.5);
        let n = NoiseSpec::none();
        let rho = random_rho(3);
        let h = p.at(0.7);
        let expect = (h * rho - rho * h).scale(-I);
        assert!((lindblad_rhs(&p, &n)(0.7, &rho) - expect).max_abs() == 0.0);
    }

    #[test]
    fn mixed_state_is_stationary() {
        let p = LZParams::symmetric(1.0, 2.0);
        let n = NoiseSpec::default();
        let d = lindblad_rhs(&p, &n)(3.0, &ComplexMatrix3::diag([1.0 / 3.0; 3]));
        assert!(d.max_abs() < 1e-15);
    }

    #[test]
    fn rhs_is_traceless_and_hermitian() {
        let p = LZParams::new(-1.0, 1.0, 5.0);
        let n = NoiseSpec { xi: [0.3, 0.1, 0.2] };
        for seed in 0..10 {
            let d = lindblad_rhs(&p, &n)(1.3, &random_rho(seed));
            assert!(d.trace().norm() < 1e-14);
            assert!(d.hermitian_deviation() < 1e-14);
        }
    }
}
