//! Closed-form su(2) solution: `ψ₁` as a quadratic form in two parabolic
//! cylinder functions, `ψ₂`, `ψ₃` from the coupled equations.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::state::StateVector3;
use crate::algebra::{classify, LZParams, SymmetryClass};
use crate::error::{Error, Result};
use crate::linalg::{DMat, Lu};
use crate::specfun::{pcf_d, pcf_d_deriv, weber_taylor, PcfArgument, PcfOrder};

const I: Complex64 = Complex64::new(0.0, 1.0);
/// Largest condition number accepted for the fitting system.
pub const MAX_CONDITION: f64 = 1e12;
/// Default fitting time.
pub const DEFAULT_FIT_TIME: f64 = -8.0;

/// Coefficients of `D₁²`, `D₁D₂` and `D₂²` in `ψ₁`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnalyticConstants {
    pub c1: Complex64,
    pub c2: Complex64,
    pub c3: Complex64,
}

impl AnalyticConstants {
    fn as_array(&self) -> [Complex64; 3] {
        [self.c1, self.c2, self.c3]
    }
}

/// Conditioning and residual of a constant fit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FitDiagnostics {
    pub condition: f64,
    /// `max |M c − rhs| / max |rhs|`.
    pub residual: f64,
}

/// `u(t) = D_ν(α t)`.
#[derive(Debug, Clone, Copy)]
struct Family {
    nu: Complex64,
    alpha: Complex64,
}

impl Family {
    /// `(u, du/dt)`.
    fn eval(&self, t: f64) -> Result<(Complex64, Complex64)> {
        let nu = PcfOrder::new(self.nu)?;
        let z = PcfArgument::new(self.alpha * t)?;
        Ok((pcf_d(nu, z)?, self.alpha * pcf_d_deriv(nu, z)?))
    }

    /// Taylor coefficients of `u(t + s)` in `s`.
    fn jet(&self, t: f64, order: usize) -> Result<Vec<Complex64>> {
        let (u, du) = self.eval(t)?;
        let c = weber_taylor(self.nu, self.alpha * t, u, du / self.alpha, order);
        let mut ap = Complex64::new(1.0, 0.0);
        Ok(c.into_iter()
            .map(|ck| {
                let v = ck * ap;
                ap *= self.alpha;
                v
            })
            .collect())
    }
}

fn check_su2(p: &LZParams) -> Result<()> {
    p.validate()?;
    if classify(p) != SymmetryClass::SU2 {
        return Err(Error::DomainError(format!(
            "analytic solution needs omega = delta (got delta = {}, omega = {})",
            p.delta, p.omega
        )));
    }
    if p.pulse_sigma.is_some() {
        return Err(Error::DomainError("analytic solution needs constant couplings".into()));
    }
    if p.a == 0.0 || p.delta == 0.0 {
        return Err(Error::DomainError("analytic solution needs a != 0 and delta != 0".into()));
    }
    Ok(())
}

/// The two families with `ν₁ = −iΔ²/(2a)`, `ν₂ = −1 − ν₁`, arguments
/// `e^{iπ/4}√a t` and `e^{3iπ/4}√a t` (`√a = i√|a|` for `a < 0`).
fn families(p: &LZParams) -> [Family; 2] {
    let sqrt_a = Complex64::new(p.a, 0.0).sqrt();
    let nu1 = -I * (p.delta * p.delta / (2.0 * p.a));
    [
        Family { nu: nu1, alpha: Complex64::from_polar(1.0, PI / 4.0) * sqrt_a },
        Family { nu: -1.0 - nu1, alpha: Complex64::from_polar(1.0, 3.0 * PI / 4.0) * sqrt_a },
    ]
}

/// Both families obey `u'' = q(t) u` with this `q`.
fn q(p: &LZParams, t: f64) -> Complex64 {
    let at = p.a * t;
    -(Complex64::new(at * at / 4.0 + p.delta * p.delta / 2.0, 0.0) + I * (p.a / 2.0))
}

/// Rows: value, first and second derivative of `D₁², D₁D₂, D₂²` at `t`.
fn basis_matrix(p: &LZParams, t: f64) -> Result<[[Complex64; 3]; 3]> {
    let [f1, f2] = families(p);
    let (u, du) = f1.eval(t)?;
    let (v, dv) = f2.eval(t)?;
    let qt = q(p, t);
    Ok([
        [u * u, u * v, v * v],
        [2.0 * u * du, du * v + u * dv, 2.0 * v * dv],
        [2.0 * (du * du + qt * u * u), 2.0 * (qt * u * v + du * dv), 2.0 * (dv * dv + qt * v * v)],
    ])
}

/// Solves for the constants reproducing `ψ(t0) = (1, 0, 0)`.
pub fn fit_constants(p: &LZParams, t0: f64) -> Result<AnalyticConstants> {
    fit_constants_detailed(p, t0).map(|(c, _)| c)
}

pub fn fit_constants_detailed(p: &LZParams, t0: f64) -> Result<(AnalyticConstants, FitDiagnostics)> {
    fit_constants_to_state(p, t0, &StateVector3::basis(0)?)
}

/// Constants of the solution passing through `psi` at `t0`.
///
/// `ψ₁`, `ψ̇₁` and `ψ̈₁` at `t0` follow from the coupled equations; for
/// `psi = (1, 0, 0)` they are `1`, `−i a t0` and `−ia − [(a t0)² + Δ²]`.
pub fn fit_constants_to_state(
    p: &LZParams,
    t0: f64,
    psi: &StateVector3,
) -> Result<(AnalyticConstants, FitDiagnostics)> {
    check_su2(p)?;
    let m = basis_matrix(p, t0)?;
    let [y1, y2, y3] = psi.0;
    let (a, d) = (p.a, p.delta);
    let at0 = a * t0;
    let dy1 = -I * (at0 * y1 + d * y2);
    let dy2 = -I * d * (y1 + y3);
    let ddy1 = -I * (a * y1 + at0 * dy1 + d * dy2);
    let rhs = [y1, dy1, ddy1];
    let dm = DMat::from_fn(3, |i, j| m[i][j]);
    let lu = Lu::new(&dm)?;
    let condition = lu.condition();
    if !(condition <= MAX_CONDITION) {
        return Err(Error::IllConditioned { estimate: condition });
    }
    let x = lu.solve(&rhs);
    let mx = dm.mul_vec(&x);
    let scale = rhs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let residual = (0..3).map(|i| (mx[i] - rhs[i]).norm()).fold(0.0, f64::max) / scale;
    if residual > 1e-8 {
        return Err(Error::AccuracyLoss { what: "fit_constants", estimate: residual });
    }
    Ok((AnalyticConstants { c1: x[0], c2: x[1], c3: x[2] }, FitDiagnostics { condition, residual }))
}

/// `(ψ₁, ψ̇₁, ψ̈₁)` at `t`.
pub fn psi1_derivatives(p: &LZParams, c: &AnalyticConstants, t: f64) -> Result<[Complex64; 3]> {
    check_su2(p)?;
    let m = basis_matrix(p, t)?;
    let cs = c.as_array();
    let mut out = [Complex64::new(0.0, 0.0); 3];
    for (o, row) in out.iter_mut().zip(m.iter()) {
        *o = row[0] * cs[0] + row[1] * cs[1] + row[2] * cs[2];
    }
    Ok(out)
}

/// Full state from `ψ₁` and its derivatives: `ψ₂ = (iψ̇₁ − a t ψ₁)/Δ`,
/// `ψ₃ = iψ̇₂/Δ − ψ₁`.
pub fn analytic_state(p: &LZParams, c: &AnalyticConstants, t: f64) -> Result<StateVector3> {
    let [y, dy, ddy] = psi1_derivatives(p, c, t)?;
    let at = p.a * t;
    let psi2 = (I * dy - at * y) / p.delta;
    let dpsi2 = (I * ddy - p.a * y - at * dy) / p.delta;
    let psi3 = I * dpsi2 / p.delta - y;
    Ok(StateVector3([y, psi2, psi3]))
}

/// Taylor coefficients of `ψ₁(t + s)` in `s` up to `order`.
pub fn analytic_psi1_jet(p: &LZParams, c: &AnalyticConstants, t: f64, order: usize) -> Result<Vec<Complex64>> {
    check_su2(p)?;
    let [f1, f2] = families(p);
    let u = f1.jet(t, order)?;
    let v = f2.jet(t, order)?;
    let uu = cauchy(&u, &u);
    let uv = cauchy(&u, &v);
    let vv = cauchy(&v, &v);
    Ok((0..=order).map(|k| c.c1 * uu[k] + c.c2 * uv[k] + c.c3 * vv[k]).collect())
}

fn cauchy(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    (0..a.len()).map(|k| (0..=k).map(|i| a[i] * b[k - i]).sum()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_su3_and_pulsed() {
        assert!(matches!(fit_constants(&LZParams::new(-1.0, 1.0, 5.0), -8.0), Err(Error::DomainError(_))));
        assert!(matches!(
            fit_constants(&LZParams::symmetric(-1.0, 2.0).with_pulse(5.0), -8.0),
            Err(Error::DomainError(_))
        ));
        assert!(matches!(fit_constants(&LZParams::symmetric(-1.0, 0.0), -8.0), Err(Error::DomainError(_))));
    }

    #[test]
    fn families_solve_common_equation() {
        let p = LZParams::symmetric(-1.0, 1.0);
        for fam in families(&p) {
            let jet = fam.jet(1.3, 4).unwrap();
            // u'' = q u  ⇔  2 c₂ = q c₀
            assert!((2.0 * jet[2] - q(&p, 1.3) * jet[0]).norm() < 1e-12 * jet[0].norm().max(1.0));
        }
    }

    #[test]
    fn fit_reproduces_initial_conditions() {
        for (a, d) in [(-1.0, 1.0), (-1.0, 2.0), (1.0, 2.0)] {
            let p = LZParams::symmetric(a, d);
            let t0 = -8.0;
            let c = fit_constants(&p, t0).unwrap();
            let [y, dy, ddy] = psi1_derivatives(&p, &c, t0).unwrap();
            assert!((y - 1.0).norm() < 1e-8);
            assert!((dy + I * a * t0).norm() < 1e-8 * (a * t0).abs());
            let want = -I * a - (a * t0).powi(2) - d * d;
            assert!((ddy - want).norm() < 1e-8 * want.norm());
            let s = analytic_state(&p, &c, t0).unwrap();
            assert!(s.0[1].norm() < 1e-8 && s.0[2].norm() < 1e-8, "{:?}", s);
        }
    }

    #[test]
    fn jet_matches_derivatives() {
        let p = LZParams::symmetric(-1.0, 1.0);
        let c = fit_constants(&p, -8.0).unwrap();
        let d = psi1_derivatives(&p, &c, 2.0).unwrap();
        let j = analytic_psi1_jet(&p, &c, 2.0, 4).unwrap();
        assert!((j[0] - d[0]).norm() < 1e-12);
        assert!((j[1] - d[1]).norm() < 1e-11);
        assert!((2.0 * j[2] - d[2]).norm() < 1e-10);
    }
}
