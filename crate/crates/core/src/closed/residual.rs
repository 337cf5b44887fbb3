//! Residuals of the third-order equation obeyed by `ψ₁`.

use num_complex::Complex64;

use super::analytic::{analytic_psi1_jet, AnalyticConstants};
use super::state::StateVector3;
use crate::algebra::{Hamiltonian3, LZParams};
use crate::error::{Error, Result};
use crate::propagate::{rk_adaptive, IntegratorConfig, TimeGrid};

const I: Complex64 = Complex64::new(0.0, 1.0);
/// Stencil step used by [`ode3_residual`].
pub const RESIDUAL_STEP: f64 = 1e-4;
const JET_ORDER: usize = 10;

/// Coefficients `(k₁(t), k₀(t))` of
/// `ψ⃛₁ + k₁ ψ̇₁ + k₀ ψ₁ = 0`:
/// `k₁ = 2ia + (at)² + Δ² + Ω²`, `k₀ = [a² + ia(Ω² − Δ²)] t`.
pub fn ode3_coefficients(p: &LZParams, t: f64) -> (Complex64, Complex64) {
    let (a, d2, o2) = (p.a, p.delta * p.delta, p.omega * p.omega);
    let k1 = Complex64::new((a * t).powi(2) + (d2 + o2), 2.0 * a);
    let k0 = Complex64::new(a * a, a * (o2 - d2)) * t;
    (k1, k0)
}

/// A `ψ₁(t)` that can report its local Taylor expansion.
pub trait Psi1Source {
    /// Taylor coefficients of `ψ₁(t + s)` in `s`, orders `0..=order`.
    fn jet(&self, t: f64, order: usize) -> Result<Vec<Complex64>>;
}

/// The analytic su(2) `ψ₁`.
pub struct AnalyticPsi1<'a> {
    pub params: &'a LZParams,
    pub constants: &'a AnalyticConstants,
}

impl Psi1Source for AnalyticPsi1<'_> {
    fn jet(&self, t: f64, order: usize) -> Result<Vec<Complex64>> {
        analytic_psi1_jet(self.params, self.constants, t, order)
    }
}

/// `ψ₁` of a numerically integrated state; the jet about `t` follows from the
/// Schrödinger recursion `(k+1) ψ_{k+1} = −i (H₀(t) ψ_k + H₁ ψ_{k−1})`.
pub struct NumericPsi1<'a, H: Hamiltonian3 + ?Sized> {
    pub hamiltonian: &'a H,
    pub t0: f64,
    pub psi0: StateVector3,
    pub config: IntegratorConfig,
}

impl<H: Hamiltonian3 + ?Sized> NumericPsi1<'_, H> {
    pub fn state_at(&self, t: f64) -> Result<[Complex64; 3]> {
        if t == self.t0 {
            return Ok(self.psi0.0);
        }
        if t < self.t0 {
            return Err(Error::InvalidParameter(format!("t = {t} precedes the initial time {}", self.t0)));
        }
        let grid = TimeGrid::new(self.t0, t, t - self.t0)?;
        let h = self.hamiltonian;
        let sol = rk_adaptive(
            |tt, y, dy| {
                let v = h.at(tt).mul_vec(&[y[0], y[1], y[2]]);
                for k in 0..3 {
                    dy[k] = -I * v[k];
                }
            },
            &self.psi0.0,
            &grid,
            &self.config,
        )?;
        let s = sol.states.last().expect("grid has two points");
        Ok([s[0], s[1], s[2]])
    }
}

impl<H: Hamiltonian3 + ?Sized> Psi1Source for NumericPsi1<'_, H> {
    fn jet(&self, t: f64, order: usize) -> Result<Vec<Complex64>> {
        let (_, h1) = self
            .hamiltonian
            .affine_parts()
            .ok_or_else(|| Error::DomainError("state jets need a Hamiltonian affine in t".into()))?;
        let h0 = self.hamiltonian.at(t);
        let mut terms = vec![self.state_at(t)?];
        for k in 0..order {
            let mut next = h0.mul_vec(&terms[k]);
            if k >= 1 {
                let extra = h1.mul_vec(&terms[k - 1]);
                for i in 0..3 {
                    next[i] += extra[i];
                }
            }
            let f = -I / (k + 1) as f64;
            terms.push([next[0] * f, next[1] * f, next[2] * f]);
        }
        Ok(terms.iter().map(|v| v[0]).collect())
    }
}

/// `ψ₁(t + s) − ψ₁(t)` from a jet, summed without forming the difference.
fn increment(jet: &[Complex64], s: f64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for ck in jet.iter().skip(1).rev() {
        acc = (acc + ck) * s;
    }
    acc
}

/// Residual of the third-order equation at `t`, with `ψ̇₁` and `ψ⃛₁` from
/// five-point stencils at step `h` applied to jet increments.
pub fn ode3_residual_with_step<S: Psi1Source + ?Sized>(p: &LZParams, src: &S, t: f64, h: f64) -> Result<Complex64> {
    let jet = src.jet(t, JET_ORDER)?;
    let g = |k: f64| increment(&jet, k * h);
    let (m2, m1, p1, p2) = (g(-2.0), g(-1.0), g(1.0), g(2.0));
    let d1 = (m2 - 8.0 * m1 + 8.0 * p1 - p2) / (12.0 * h);
    let d3 = (p2 - 2.0 * p1 + 2.0 * m1 - m2) / (2.0 * h * h * h);
    let (k1, k0) = ode3_coefficients(p, t);
    Ok(d3 + k1 * d1 + k0 * jet[0])
}

/// [`ode3_residual_with_step`] at `h = 1e-4`.
pub fn ode3_residual<S: Psi1Source + ?Sized>(p: &LZParams, src: &S, t: f64) -> Result<Complex64> {
    ode3_residual_with_step(p, src, t, RESIDUAL_STEP)
}

/// Residual with stencils applied directly to samples of `ψ₁`.
///
/// In double precision the third-derivative stencil carries a rounding floor
/// of roughly `ε |ψ₁| / h³`.
pub fn ode3_residual_sampled<F: Fn(f64) -> Complex64>(p: &LZParams, psi1: F, t: f64, h: f64) -> Complex64 {
    let (m2, m1, z, p1, p2) = (psi1(t - 2.0 * h), psi1(t - h), psi1(t), psi1(t + h), psi1(t + 2.0 * h));
    let d1 = (m2 - 8.0 * m1 + 8.0 * p1 - p2) / (12.0 * h);
    let d3 = (p2 - 2.0 * p1 + 2.0 * m1 - m2) / (2.0 * h * h * h);
    let (k1, k0) = ode3_coefficients(p, t);
    d3 + k1 * d1 + k0 * z
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn general_coefficients_reduce_to_symmetric_case() {
        for (a, d, t) in [(-1.0, 1.0, 0.3), (1.0, 2.0, -4.0), (0.5, 0.7, 9.0)] {
            let (k1, k0) = ode3_coefficients(&LZParams::symmetric(a, d), t);
            assert_eq!(k1, Complex64::new((a * t).powi(2) + 2.0 * d * d, 2.0 * a));
            assert_eq!(k0, Complex64::new(a * a * t, 0.0));
        }
    }

    #[test]
    fn polynomial_increment() {
        let jet = [Complex64::new(5.0, 0.0), Complex64::new(1.0, 0.0), Complex64::new(0.0, 2.0)];
        assert_eq!(increment(&jet, 0.5), Complex64::new(0.5, 0.5));
    }
}
