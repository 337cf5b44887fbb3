use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::generators::{gellmann_matrices, spin1_matrices};
use super::matrix::ComplexMatrix3;
use crate::error::{Error, Result};

/// Linear-sweep parameters of the three-level Hamiltonian
/// `[[a t, Δ(t), 0], [Δ(t), 0, Ω(t)], [0, Ω(t), -a t]]`.
///
/// With `pulse_sigma` set, both couplings carry the envelope `exp(-(t / 2σ)²)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LZParams {
    pub a: f64,
    pub delta: f64,
    pub omega: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pulse_sigma: Option<f64>,
}

impl LZParams {
    pub fn new(a: f64, delta: f64, omega: f64) -> Self {
        LZParams { a, delta, omega, pulse_sigma: None }
    }

    /// The su(2) case `Ω = Δ`.
    pub fn symmetric(a: f64, delta: f64) -> Self {
        Self::new(a, delta, delta)
    }

    pub fn with_pulse(mut self, sigma: f64) -> Self {
        self.pulse_sigma = Some(sigma);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.a.is_finite() && self.delta.is_finite() && self.omega.is_finite()) {
            return Err(Error::InvalidParameter("a, delta and omega must be finite".into()));
        }
        if let Some(s) = self.pulse_sigma {
            if !(s.is_finite() && s > 0.0) {
                return Err(Error::InvalidParameter(format!("pulse_sigma must be > 0, got {s}")));
            }
        }
        Ok(())
    }

    pub fn envelope(&self, t: f64) -> f64 {
        match self.pulse_sigma {
            Some(s) => {
                let x = t / (2.0 * s);
                (-x * x).exp()
            }
            None => 1.0,
        }
    }

    pub fn delta_at(&self, t: f64) -> f64 {
        self.delta * self.envelope(t)
    }

    pub fn omega_at(&self, t: f64) -> f64 {
        self.omega * self.envelope(t)
    }
}

/// General linear-sweep su(3) Hamiltonian
/// `(a t / 2)(λ₃ + √3 λ₈) + Σ_{j ∈ {1,2,4,5,6,7}} Δ_j λ_j`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SU3Params {
    pub a: f64,
    /// Coefficients of `λ₁, λ₂, λ₄, λ₅, λ₆, λ₇` in that order.
    pub coeffs: [f64; 6],
}

impl SU3Params {
    pub const GENERATOR_INDICES: [usize; 6] = [1, 2, 4, 5, 6, 7];

    pub fn validate(&self) -> Result<()> {
        if self.a.is_finite() && self.coeffs.iter().all(|c| c.is_finite()) {
            Ok(())
        } else {
            Err(Error::InvalidParameter("su(3) coefficients must be finite".into()))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SymmetryClass {
    SU2,
    SU3,
}

pub fn build_hamiltonian(p: &LZParams, t: f64) -> ComplexMatrix3 {
    let at = p.a * t;
    let d = p.delta_at(t);
    let o = p.omega_at(t);
    ComplexMatrix3::from_real([[at, d, 0.0], [d, 0.0, o], [0.0, o, -at]])
}

pub fn build_su3_hamiltonian(p: &SU3Params, t: f64) -> ComplexMatrix3 {
    let l = gellmann_matrices();
    let half_at = 0.5 * p.a * t;
    let mut h = (l[2] + l[7].scale_re(3f64.sqrt())).scale_re(half_at);
    for (&j, &cj) in SU3Params::GENERATOR_INDICES.iter().zip(p.coeffs.iter()) {
        h += l[j - 1].scale_re(cj);
    }
    h
}

/// `a t S_z + √2 Δ S_x`, the spin-1 form of the symmetric Hamiltonian.
pub fn spin1_hamiltonian(a: f64, delta: f64, t: f64) -> ComplexMatrix3 {
    let (sx, _, sz) = spin1_matrices();
    sz.scale_re(a * t) + sx.scale_re(std::f64::consts::SQRT_2 * delta)
}

pub fn classify(p: &LZParams) -> SymmetryClass {
    let scale = 1f64.max(p.delta.abs()).max(p.omega.abs());
    if (p.delta - p.omega).abs() <= 1e-12 * scale {
        SymmetryClass::SU2
    } else {
        SymmetryClass::SU3
    }
}

/// A time-dependent three-level Hamiltonian.
pub trait Hamiltonian3: Sync {
    fn at(&self, t: f64) -> ComplexMatrix3;

    /// `(H(0), dH/dt)` when `H(t)` is affine in `t`.
    fn affine_parts(&self) -> Option<(ComplexMatrix3, ComplexMatrix3)> {
        None
    }
}

impl Hamiltonian3 for LZParams {
    fn at(&self, t: f64) -> ComplexMatrix3 {
        build_hamiltonian(self, t)
    }

    fn affine_parts(&self) -> Option<(ComplexMatrix3, ComplexMatrix3)> {
        self.pulse_sigma.is_none().then(|| (build_hamiltonian(self, 0.0), ComplexMatrix3::diag([self.a, 0.0, -self.a])))
    }
}

impl Hamiltonian3 for SU3Params {
    fn at(&self, t: f64) -> ComplexMatrix3 {
        build_su3_hamiltonian(self, t)
    }

    fn affine_parts(&self) -> Option<(ComplexMatrix3, ComplexMatrix3)> {
        let h0 = build_su3_hamiltonian(self, 0.0);
        Some((h0, build_su3_hamiltonian(self, 1.0) - h0))
    }
}

/// A constant Hamiltonian.
impl Hamiltonian3 for ComplexMatrix3 {
    fn at(&self, _t: f64) -> ComplexMatrix3 {
        *self
    }

    fn affine_parts(&self) -> Option<(ComplexMatrix3, ComplexMatrix3)> {
        Some((*self, ComplexMatrix3::zero()))
    }
}

/// Applies `H(t)` to a state without materialising the matrix.
pub fn apply_hamiltonian(p: &LZParams, t: f64, psi: &[Complex64; 3]) -> [Complex64; 3] {
    let at = p.a * t;
    let d = p.delta_at(t);
    let o = p.omega_at(t);
    [psi[0] * at + psi[1] * d, psi[0] * d + psi[2] * o, psi[1] * o - psi[2] * at]
}
