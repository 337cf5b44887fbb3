use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::{eigenvalues_hermitian3, ComplexMatrix3};
use crate::closed::{purity, StateVector3};
use crate::error::{Error, Result};

/// Per-channel volatility used when none is given.
pub const DEFAULT_XI: f64 = 0.1;

/// Volatilities `ξ₀ⱼ` of the `S_x`, `S_y`, `S_z` channels.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NoiseSpec {
    pub xi: [f64; 3],
}

impl Default for NoiseSpec {
    fn default() -> Self {
        Self::isotropic(DEFAULT_XI)
    }
}

impl NoiseSpec {
    pub fn isotropic(xi: f64) -> Self {
        Self { xi: [xi; 3] }
    }

    pub fn none() -> Self {
        Self { xi: [0.0; 3] }
    }

    pub fn validate(&self) -> Result<()> {
        if self.xi.iter().all(|x| x.is_finite() && *x >= 0.0) {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!(
                "noise volatilities must be finite and non-negative, got {:?}",
                self.xi
            )))
        }
    }

    pub fn is_zero(&self) -> bool {
        self.xi.iter().all(|x| *x == 0.0)
    }
}

/// Hermitian, unit-trace, positive semidefinite 3×3 matrix.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DensityMatrix3(pub ComplexMatrix3);

impl DensityMatrix3 {
    /// Validates Hermiticity (1e-10), trace (1e-8) and the smallest
    /// eigenvalue (≥ −1e-8).
    pub fn new(m: ComplexMatrix3) -> Result<Self> {
        if !m.is_finite() {
            return Err(Error::InvalidParameter("density matrix must be finite".into()));
        }
        let dev = m.hermitian_deviation();
        if dev > 1e-10 {
            return Err(Error::NonHermitianInput { deviation: dev });
        }
        let tr = m.trace();
        if (tr - 1.0).norm() > 1e-8 {
            return Err(Error::InvalidParameter(format!("density matrix trace is {tr}, expected 1")));
        }
        let rho = Self(m);
        let min = rho.min_eigenvalue()?;
        if min < -1e-8 {
            return Err(Error::InvalidParameter(format!("density matrix has negative eigenvalue {min:e}")));
        }
        Ok(rho)
    }

    pub fn pure(psi: &StateVector3) -> Self {
        Self(psi.projector())
    }

    pub fn maximally_mixed() -> Self {
        Self(ComplexMatrix3::diag([1.0 / 3.0; 3]))
    }

    pub fn populations(&self) -> [f64; 3] {
        [self.0[(0, 0)].re, self.0[(1, 1)].re, self.0[(2, 2)].re]
    }

    pub fn purity(&self) -> f64 {
        purity(&self.0)
    }

    pub fn min_eigenvalue(&self) -> Result<f64> {
        Ok(eigenvalues_hermitian3(&hermitian_part(&self.0))?[0])
    }
}

pub(crate) fn hermitian_part(m: &ComplexMatrix3) -> ComplexMatrix3 {
    ComplexMatrix3::from_fn(|i, j| (m[(i, j)] + m[(j, i)].conj()) * 0.5)
}

pub(crate) fn zero3() -> ComplexMatrix3 {
    ComplexMatrix3::from_fn(|_, _| Complex64::new(0.0, 0.0))
}
