use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::{ComplexMatrix3, Vector3};
use crate::error::{Error, Result};

/// Normalization tolerance accepted for initial states.
pub const NORM_TOL: f64 = 1e-8;

/// Three-level pure state `(ψ₁, ψ₂, ψ₃)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct StateVector3(pub Vector3);

impl StateVector3 {
    /// Normalized state; rejects amplitudes whose norm is off by more than 1e-8.
    pub fn new(amps: Vector3) -> Result<Self> {
        if !amps.iter().all(|c| c.re.is_finite() && c.im.is_finite()) {
            return Err(Error::InvalidParameter("state amplitudes must be finite".into()));
        }
        let s = Self(amps);
        let n = s.norm_sqr();
        if (n - 1.0).abs() > NORM_TOL {
            return Err(Error::InvalidParameter(format!("state is not normalized (|psi|^2 = {n})")));
        }
        Ok(s)
    }

    /// Basis state `|k⟩`, `k ∈ {0, 1, 2}`.
    pub fn basis(k: usize) -> Result<Self> {
        if k > 2 {
            return Err(Error::InvalidParameter(format!("basis index {k} out of range 0..=2")));
        }
        let mut v = [Complex64::new(0.0, 0.0); 3];
        v[k] = Complex64::new(1.0, 0.0);
        Ok(Self(v))
    }

    pub fn norm_sqr(&self) -> f64 {
        self.0.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn populations(&self) -> [f64; 3] {
        [self.0[0].norm_sqr(), self.0[1].norm_sqr(), self.0[2].norm_sqr()]
    }

    /// `|ψ⟩⟨ψ|`.
    pub fn projector(&self) -> ComplexMatrix3 {
        ComplexMatrix3::from_fn(|i, j| self.0[i] * self.0[j].conj())
    }
}

/// One sample of a trajectory.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Record {
    pub populations: [f64; 3],
    /// `P₁ + P₂ + P₃` (the squared norm for pure states).
    pub trace: f64,
    pub purity: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub state: Option<Vector3>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub density: Option<ComplexMatrix3>,
}

impl Record {
    pub fn from_state(psi: &Vector3) -> Self {
        let populations = [psi[0].norm_sqr(), psi[1].norm_sqr(), psi[2].norm_sqr()];
        let trace = populations[0] + populations[1] + populations[2];
        Self { populations, trace, purity: trace * trace, state: Some(*psi), density: None }
    }

    pub fn from_density(rho: &ComplexMatrix3) -> Self {
        let populations = [rho[(0, 0)].re, rho[(1, 1)].re, rho[(2, 2)].re];
        let trace = populations[0] + populations[1] + populations[2];
        Self { populations, trace, purity: purity(rho), state: None, density: Some(*rho) }
    }

    /// Drops the stored state or matrix.
    pub fn summary(&self) -> Self {
        Self { state: None, density: None, ..self.clone() }
    }
}

/// `Re Tr ρ²`.
pub fn purity(rho: &ComplexMatrix3) -> f64 {
    let mut s = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            s += (rho[(i, j)] * rho[(j, i)]).re;
        }
    }
    s
}

/// Sample times with one record per time.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub records: Vec<Record>,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn last(&self) -> Option<&Record> {
        self.records.last()
    }

    /// `P_j` over time, `j ∈ {0, 1, 2}`.
    pub fn population(&self, j: usize) -> Vec<f64> {
        self.records.iter().map(|r| r.populations[j]).collect()
    }

    pub fn purities(&self) -> Vec<f64> {
        self.records.iter().map(|r| r.purity).collect()
    }

    pub fn traces(&self) -> Vec<f64> {
        self.records.iter().map(|r| r.trace).collect()
    }

    /// Record nearest to `t`.
    pub fn at(&self, t: f64) -> Option<&Record> {
        let i = self.times.iter().enumerate().min_by(|a, b| (a.1 - t).abs().total_cmp(&(b.1 - t).abs()))?.0;
        self.records.get(i)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_and_normalization() {
        assert_eq!(StateVector3::basis(1).unwrap().populations(), [0.0, 1.0, 0.0]);
        assert!(StateVector3::basis(3).is_err());
        let h = Complex64::new(0.5f64.sqrt(), 0.0);
        assert!(StateVector3::new([h, Complex64::new(0.0, 0.0), h]).is_ok());
        assert!(StateVector3::new([h, h, h]).is_err());
    }

    #[test]
    fn records_sum_exactly() {
        let v = [Complex64::new(0.3, 0.1), Complex64::new(-0.2, 0.7), Complex64::new(0.1, 0.0)];
        let r = Record::from_state(&v);
        assert_eq!(r.trace, r.populations[0] + r.populations[1] + r.populations[2]);
        let rho = StateVector3(v).projector();
        let rd = Record::from_density(&rho);
        assert!((rd.purity - r.trace * r.trace).abs() < 1e-15);
    }
}
