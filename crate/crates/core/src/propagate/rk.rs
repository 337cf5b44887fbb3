//! Dormand–Prince 5(4) with PI step control and dense output.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::grid::TimeGrid;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DenseOutput {
    /// Cubic Hermite interpolation from the step endpoints and slopes.
    Hermite,
    /// Fourth-order continuous extension of the Dormand–Prince pair; the cubic
    /// Hermite interpolant plus a quartic correction.
    #[default]
    Dopri,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntegratorConfig {
    pub rtol: f64,
    pub atol: f64,
    pub max_step: f64,
    /// First trial step; chosen automatically when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub initial_step: Option<f64>,
    #[serde(default)]
    pub dense: DenseOutput,
}

impl Default for IntegratorConfig {
    fn default() -> Self {
        Self { rtol: 1e-10, atol: 1e-12, max_step: 1.0, initial_step: None, dense: DenseOutput::Dopri }
    }
}

impl IntegratorConfig {
    pub fn with_tolerances(rtol: f64, atol: f64) -> Self {
        Self { rtol, atol, ..Self::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rtol >= 1e-14) {
            return Err(Error::InvalidParameter(format!("rtol must be >= 1e-14, got {}", self.rtol)));
        }
        if !(self.atol >= 1e-16) {
            return Err(Error::InvalidParameter(format!("atol must be >= 1e-16, got {}", self.atol)));
        }
        if !(self.max_step > 0.0) {
            return Err(Error::InvalidParameter(format!("max_step must be positive, got {}", self.max_step)));
        }
        if let Some(h) = self.initial_step {
            if !(h > 0.0 && h.is_finite()) {
                return Err(Error::InvalidParameter(format!("initial_step must be positive, got {h}")));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct RkStats {
    pub accepted: usize,
    pub rejected: usize,
    pub rhs_evals: usize,
    /// Sum over accepted steps of the scaled local error estimate.
    pub error_sum: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RkSolution {
    pub times: Vec<f64>,
    pub states: Vec<Vec<Complex64>>,
    pub stats: RkStats,
}

const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const A71: f64 = 35.0 / 384.0;
const A73: f64 = 500.0 / 1113.0;
const A74: f64 = 125.0 / 192.0;
const A75: f64 = -2187.0 / 6784.0;
const A76: f64 = 11.0 / 84.0;
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;
const D1: f64 = -12715105075.0 / 11282082432.0;
const D3: f64 = 87487479700.0 / 32700410799.0;
const D4: f64 = -10690763975.0 / 1880347072.0;
const D5: f64 = 701980252875.0 / 199316789632.0;
const D6: f64 = -1453857185.0 / 822651844.0;
const D7: f64 = 69997945.0 / 29380423.0;

const SAFETY: f64 = 0.8;
const BETA: f64 = 0.04;
const EXPO1: f64 = 0.2 - BETA * 0.75;
const FAC_MIN: f64 = 0.2;
const FAC_MAX: f64 = 10.0;

fn all_finite(y: &[Complex64]) -> bool {
    y.iter().all(|c| c.re.is_finite() && c.im.is_finite())
}

/// Scaled RMS norm with per-component weights `atol + rtol·|y|`.
fn scaled_norm(v: &[Complex64], y: &[Complex64], y2: &[Complex64], rtol: f64, atol: f64) -> f64 {
    let l2 = |w: &[Complex64]| w.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    l2(v) / (atol + rtol * l2(y).max(l2(y2)))
}

/// Integrates `y' = rhs(t, y)` across `grid`, returning `y` at every grid time.
///
/// `rhs(t, y, dy)` writes the derivative into `dy`.
pub fn rk_adaptive<F>(mut rhs: F, y0: &[Complex64], grid: &TimeGrid, cfg: &IntegratorConfig) -> Result<RkSolution>
where
    F: FnMut(f64, &[Complex64], &mut [Complex64]),
{
    grid.validate()?;
    cfg.validate()?;
    if !all_finite(y0) {
        return Err(Error::NonFiniteState { t: grid.t0 });
    }
    let n = y0.len();
    let times = grid.times();
    let t_end = grid.t1;
    let h_min = 1e-14 * (grid.t1 - grid.t0);
    let zero = Complex64::new(0.0, 0.0);
    let mut stats = RkStats::default();

    let mut t = grid.t0;
    let mut y = y0.to_vec();
    let mut k = vec![vec![zero; n]; 7];
    let mut tmp = vec![zero; n];
    let mut y_new = vec![zero; n];
    let mut err = vec![zero; n];
    let mut cont = vec![vec![zero; n]; 5];

    rhs(t, &y, &mut k[0]);
    stats.rhs_evals += 1;
    if !all_finite(&k[0]) {
        return Err(Error::NonFiniteState { t });
    }

    let mut h = match cfg.initial_step {
        Some(h) => h,
        None => initial_step(&mut rhs, t, &y, &k[0], cfg, &mut stats),
    }
    .min(cfg.max_step)
    .min(t_end - t);

    let mut states = Vec::with_capacity(times.len());
    states.push(y.clone());
    let mut next_out = 1;
    let mut err_old: f64 = 1e-4;
    let mut last_rejected = false;

    while next_out < times.len() {
        if h < h_min {
            return Err(Error::StepUnderflow { t, h });
        }
        let last = t + h >= t_end - h_min;
        if last {
            h = t_end - t;
        }
        let h_c = Complex64::new(h, 0.0);
        stage(&mut tmp, &y, h, &[(A21, &k[0])]);
        rhs(t + C2 * h, &tmp, &mut k[1]);
        stage(&mut tmp, &y, h, &[(A31, &k[0]), (A32, &k[1])]);
        rhs(t + C3 * h, &tmp, &mut k[2]);
        stage(&mut tmp, &y, h, &[(A41, &k[0]), (A42, &k[1]), (A43, &k[2])]);
        rhs(t + C4 * h, &tmp, &mut k[3]);
        stage(&mut tmp, &y, h, &[(A51, &k[0]), (A52, &k[1]), (A53, &k[2]), (A54, &k[3])]);
        rhs(t + C5 * h, &tmp, &mut k[4]);
        stage(&mut tmp, &y, h, &[(A61, &k[0]), (A62, &k[1]), (A63, &k[2]), (A64, &k[3]), (A65, &k[4])]);
        let t_new = if last { t_end } else { t + h };
        rhs(t_new, &tmp, &mut k[5]);
        stage(&mut y_new, &y, h, &[(A71, &k[0]), (A73, &k[2]), (A74, &k[3]), (A75, &k[4]), (A76, &k[5])]);
        rhs(t_new, &y_new, &mut k[6]);
        stats.rhs_evals += 6;

        for i in 0..n {
            err[i] = h_c * (E1 * k[0][i] + E3 * k[2][i] + E4 * k[3][i] + E5 * k[4][i] + E6 * k[5][i] + E7 * k[6][i]);
        }
        let e = scaled_norm(&err, &y, &y_new, cfg.rtol, cfg.atol);
        if !e.is_finite() || !all_finite(&y_new) {
            // treat as a failed step and retry smaller
            stats.rejected += 1;
            h *= FAC_MIN;
            last_rejected = true;
            if h < h_min {
                return Err(Error::NonFiniteState { t });
            }
            continue;
        }

        if e <= 1.0 {
            stats.accepted += 1;
            stats.error_sum += e;
            let fac11 = e.max(1e-16).powf(EXPO1);
            let mut fac = fac11 / err_old.powf(BETA);
            fac = (fac / SAFETY).clamp(1.0 / FAC_MAX, 1.0 / FAC_MIN);
            let mut h_next = h / fac;
            if last_rejected {
                h_next = h_next.min(h);
            }
            err_old = e.max(1e-4);
            last_rejected = false;

            if cfg.dense == DenseOutput::Dopri {
                for i in 0..n {
                    let ydiff = y_new[i] - y[i];
                    let bspl = h_c * k[0][i] - ydiff;
                    cont[0][i] = y[i];
                    cont[1][i] = ydiff;
                    cont[2][i] = bspl;
                    cont[3][i] = ydiff - h_c * k[6][i] - bspl;
                    cont[4][i] =
                        h_c * (D1 * k[0][i] + D3 * k[2][i] + D4 * k[3][i] + D5 * k[4][i] + D6 * k[5][i] + D7 * k[6][i]);
                }
            }
            while next_out < times.len() && (times[next_out] <= t_new || last) {
                let to = times[next_out];
                if to == t_new {
                    states.push(y_new.clone());
                } else {
                    let theta = (to - t) / h;
                    let mut out = vec![zero; n];
                    match cfg.dense {
                        DenseOutput::Hermite => hermite(&mut out, theta, h, &y, &k[0], &y_new, &k[6]),
                        DenseOutput::Dopri => {
                            let th1 = 1.0 - theta;
                            for i in 0..n {
                                out[i] = cont[0][i]
                                    + theta
                                        * (cont[1][i] + th1 * (cont[2][i] + theta * (cont[3][i] + th1 * cont[4][i])));
                            }
                        }
                    }
                    states.push(out);
                }
                next_out += 1;
            }
            t = t_new;
            std::mem::swap(&mut y, &mut y_new);
            k.swap(0, 6);
            h = h_next.min(cfg.max_step).min((t_end - t).max(0.0));
            if last {
                break;
            }
        } else {
            stats.rejected += 1;
            let fac11 = e.powf(EXPO1);
            h /= (fac11 / SAFETY).min(1.0 / FAC_MIN);
            last_rejected = true;
        }
    }
    Ok(RkSolution { times, states, stats })
}

fn stage(out: &mut [Complex64], y: &[Complex64], h: f64, terms: &[(f64, &Vec<Complex64>)]) {
    for i in 0..out.len() {
        let mut acc = Complex64::new(0.0, 0.0);
        for (a, k) in terms {
            acc += *a * k[i];
        }
        out[i] = y[i] + h * acc;
    }
}

fn hermite(
    out: &mut [Complex64],
    theta: f64,
    h: f64,
    y0: &[Complex64],
    f0: &[Complex64],
    y1: &[Complex64],
    f1: &[Complex64],
) {
    let t2 = theta * theta;
    let t3 = t2 * theta;
    let h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
    let h10 = t3 - 2.0 * t2 + theta;
    let h01 = -2.0 * t3 + 3.0 * t2;
    let h11 = t3 - t2;
    for i in 0..out.len() {
        out[i] = h00 * y0[i] + h10 * h * f0[i] + h01 * y1[i] + h11 * h * f1[i];
    }
}

/// Starting step from the size of `y`, `f` and a trial Euler step.
fn initial_step<F>(
    rhs: &mut F,
    t: f64,
    y: &[Complex64],
    f0: &[Complex64],
    cfg: &IntegratorConfig,
    stats: &mut RkStats,
) -> f64
where
    F: FnMut(f64, &[Complex64], &mut [Complex64]),
{
    let n = y.len();
    let d0 = scaled_norm(y, y, y, cfg.rtol, cfg.atol);
    let d1 = scaled_norm(f0, y, y, cfg.rtol, cfg.atol);
    let h0 = if d0 < 1e-5 || d1 < 1e-5 { 1e-6 } else { 0.01 * d0 / d1 };
    let h0 = h0.min(cfg.max_step);
    let y1: Vec<Complex64> = (0..n).map(|i| y[i] + h0 * f0[i]).collect();
    let mut f1 = vec![Complex64::new(0.0, 0.0); n];
    rhs(t + h0, &y1, &mut f1);
    stats.rhs_evals += 1;
    let diff: Vec<Complex64> = (0..n).map(|i| f1[i] - f0[i]).collect();
    let d2 = scaled_norm(&diff, y, y, cfg.rtol, cfg.atol) / h0;
    let h1 = if d1.max(d2) <= 1e-15 { (h0 * 1e-3).max(1e-6) } else { (0.01 / d1.max(d2)).powf(0.2) };
    (100.0 * h0).min(h1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phase_rotation_returns_to_one() {
        let cfg = IntegratorConfig::default();
        let grid = TimeGrid::new(0.0, 2.0 * std::f64::consts::PI, 0.1).unwrap();
        let sol =
            rk_adaptive(|_, y, dy| dy[0] = Complex64::new(0.0, -1.0) * y[0], &[Complex64::new(1.0, 0.0)], &grid, &cfg)
                .unwrap();
        let end = sol.states.last().unwrap()[0];
        assert!((end - 1.0).norm() <= 10.0 * cfg.rtol, "{end}");
        for (t, s) in sol.times.iter().zip(&sol.states) {
            let e = (s[0] - Complex64::new(0.0, -t).exp()).norm();
            assert!(e <= 10.0 * cfg.rtol, "t = {t}: {e:e} (accepted {})", sol.stats.accepted);
        }
    }

    #[test]
    fn hermite_dense_output_is_coarser() {
        let grid = TimeGrid::new(0.0, 2.0 * std::f64::consts::PI, 0.1).unwrap();
        let run = |dense| {
            let cfg = IntegratorConfig { dense, ..Default::default() };
            let sol = rk_adaptive(
                |_, y, dy| dy[0] = Complex64::new(0.0, -1.0) * y[0],
                &[Complex64::new(1.0, 0.0)],
                &grid,
                &cfg,
            )
            .unwrap();
            sol.times
                .iter()
                .zip(&sol.states)
                .map(|(t, s)| (s[0] - Complex64::new(0.0, -t).exp()).norm())
                .fold(0.0, f64::max)
        };
        let (h, d) = (run(DenseOutput::Hermite), run(DenseOutput::Dopri));
        assert!(d < h, "{d:e} vs {h:e}");
        assert!(h < 1e-7);
    }

    #[test]
    fn rejects_non_finite_start() {
        let grid = TimeGrid::new(0.0, 1.0, 0.5).unwrap();
        let r = rk_adaptive(
            |_, _, dy| dy[0] = Complex64::new(0.0, 0.0),
            &[Complex64::new(f64::NAN, 0.0)],
            &grid,
            &IntegratorConfig::default(),
        );
        assert!(matches!(r, Err(Error::NonFiniteState { .. })));
    }

    #[test]
    fn blow_up_is_reported() {
        let grid = TimeGrid::new(0.0, 2.0, 0.5).unwrap();
        // y' = y², y(0) = 1 blows up at t = 1
        let r = rk_adaptive(
            |_, y, dy| dy[0] = y[0] * y[0],
            &[Complex64::new(1.0, 0.0)],
            &grid,
            &IntegratorConfig::default(),
        );
        assert!(matches!(r, Err(Error::StepUnderflow { .. }) | Err(Error::NonFiniteState { .. })));
    }

    #[test]
    fn config_validation() {
        assert!(IntegratorConfig::with_tolerances(1e-15, 1e-12).validate().is_err());
        assert!(IntegratorConfig::with_tolerances(1e-10, 1e-17).validate().is_err());
        assert!(IntegratorConfig { max_step: 0.0, ..Default::default() }.validate().is_err());
    }
}
