use num_complex::Complex64;

use super::density::{hermitian_part, zero3, DensityMatrix3, NoiseSpec};
use crate::algebra::{spin1_matrices, ComplexMatrix3};
use crate::error::{Error, Result};
use crate::linalg::{eig, svd_jacobi, DMat, Lu};

const I: Complex64 = Complex64::new(0.0, 1.0);
const DIM: usize = 9;

/// 9×9 generator acting on column-stacked `vec(ρ)`, index `α + 3β` for `ρ_αβ`.
#[derive(Debug, Clone, PartialEq)]
pub struct Superoperator {
    m: DMat,
}

/// `vec(A X B) = (Bᵀ ⊗ A) vec(X)` for column stacking.
fn kron(a: &ComplexMatrix3, b: &ComplexMatrix3) -> DMat {
    DMat::from_fn(DIM, |r, c| a[(r / 3, c / 3)] * b[(r % 3, c % 3)])
}

impl Superoperator {
    pub fn dim(&self) -> usize {
        DIM
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.m[(i, j)]
    }

    pub fn rows(&self) -> Vec<Vec<Complex64>> {
        (0..DIM).map(|i| (0..DIM).map(|j| self.m[(i, j)]).collect()).collect()
    }

    /// `L` applied to `ρ`, unstacked.
    pub fn apply(&self, rho: &ComplexMatrix3) -> ComplexMatrix3 {
        ComplexMatrix3::from_vec_col(&self.m.mul_vec(&rho.to_vec_col()))
    }

    /// `‖vec(I)ᵀ L‖`, zero for trace-preserving generators.
    pub fn trace_row_residual(&self) -> f64 {
        (0..DIM).map(|c| [0, 4, 8].iter().map(|&r| self.m[(r, c)]).sum::<Complex64>().norm_sqr()).sum::<f64>().sqrt()
    }

    /// Frobenius norm.
    pub fn norm(&self) -> f64 {
        self.m.norm_fro()
    }
}

/// Liouvillian of the master equation with frozen `h`.
///
/// `L = −i(I⊗H − Hᵀ⊗I) + ½Σⱼ ξ₀ⱼ² (2 Sⱼᵀ⊗Sⱼ − I⊗Sⱼ² − (Sⱼ²)ᵀ⊗I)`.
pub fn liouvillian_matrix(h: &ComplexMatrix3, n: &NoiseSpec) -> Result<Superoperator> {
    let dev = h.hermitian_deviation();
    if !(dev <= 1e-12) {
        return Err(Error::NonHermitianInput { deviation: dev });
    }
    n.validate()?;
    let id = ComplexMatrix3::identity();
    let comm_l = kron(&id, h);
    let comm_r = kron(&h.transpose(), &id);
    let mut m = DMat::from_fn(DIM, |r, c| -I * (comm_l[(r, c)] - comm_r[(r, c)]));
    let (sx, sy, sz) = spin1_matrices();
    for (s, xi) in [sx, sy, sz].into_iter().zip(n.xi) {
        if xi == 0.0 {
            continue;
        }
        let s2 = s * s;
        let jump = kron(&s.transpose(), &s);
        let left = kron(&id, &s2);
        let right = kron(&s2.transpose(), &id);
        let w = 0.5 * xi * xi;
        for r in 0..DIM {
            for c in 0..DIM {
                m[(r, c)] += (jump[(r, c)] * 2.0 - left[(r, c)] - right[(r, c)]) * w;
            }
        }
    }
    Ok(Superoperator { m })
}

/// Eigen-decomposition of a Liouvillian, optionally expanded on an initial state.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralDecomposition {
    /// Eigenvalues, descending real part (ties by descending imaginary part).
    pub lambdas: Vec<Complex64>,
    /// Unit-norm eigenmatrices matching `lambdas`.
    pub modes: Vec<ComplexMatrix3>,
    /// Index of `λ₀`, the eigenvalue of smallest modulus.
    pub zero_index: usize,
    /// `a_i = c_i · mode_i` for the supplied `ρ0`.
    pub amplitudes: Option<Vec<ComplexMatrix3>>,
    /// Steady component `a₀`.
    pub a0: Option<ComplexMatrix3>,
}

impl SpectralDecomposition {
    /// `a₀ + Σ_{i≠0} a_i e^{λ_i t}`; `None` without amplitudes.
    pub fn reconstruct(&self, t: f64) -> Option<ComplexMatrix3> {
        let amps = self.amplitudes.as_ref()?;
        let mut out = zero3();
        for (i, (a, l)) in amps.iter().zip(&self.lambdas).enumerate() {
            if i == self.zero_index {
                out += *a;
            } else {
                out += a.scale((l * t).exp());
            }
        }
        Some(out)
    }

    /// Eigenvalues other than `λ₀`.
    pub fn nonzero_modes(&self) -> usize {
        self.lambdas.len() - 1
    }

    /// Number of eigenvalues with `|λ| ≤ tol`.
    pub fn kernel_count(&self, tol: f64) -> usize {
        self.lambdas.iter().filter(|l| l.norm() <= tol).count()
    }

    /// Distinct decay rates `−Re λ` among the nonzero modes, merged within `tol`.
    pub fn decay_rates(&self, tol: f64) -> Vec<f64> {
        let mut rates: Vec<f64> =
            self.lambdas.iter().enumerate().filter(|(i, _)| *i != self.zero_index).map(|(_, l)| -l.re).collect();
        rates.sort_by(f64::total_cmp);
        rates.dedup_by(|a, b| (*a - *b).abs() <= tol);
        rates
    }
}

/// Full complex spectrum of `l` by Hessenberg reduction and shifted QR.
///
/// With `rho0`, the amplitudes come from solving `V c = vec(ρ0)`.
pub fn liouvillian_spectrum(l: &Superoperator, rho0: Option<&DensityMatrix3>) -> Result<SpectralDecomposition> {
    if !l.m.is_finite() {
        return Err(Error::InvalidParameter("Liouvillian has non-finite entries".into()));
    }
    let (lambdas, vecs) = eig(&l.m)?;
    let mut order: Vec<usize> = (0..DIM).collect();
    order.sort_by(|&a, &b| lambdas[b].re.total_cmp(&lambdas[a].re).then(lambdas[b].im.total_cmp(&lambdas[a].im)));
    let sorted: Vec<Complex64> = order.iter().map(|&k| lambdas[k]).collect();
    let v = DMat::from_fn(DIM, |r, c| vecs[(r, order[c])]);
    let modes = (0..DIM).map(|c| ComplexMatrix3::from_vec_col(&v.column(c))).collect();
    let zero_index = (0..DIM).min_by(|&a, &b| sorted[a].norm().total_cmp(&sorted[b].norm())).unwrap_or(0);
    let (amplitudes, a0) = match rho0 {
        Some(rho) => {
            let c = Lu::new(&v)?.solve(&rho.0.to_vec_col());
            let amps: Vec<ComplexMatrix3> =
                (0..DIM).map(|k| ComplexMatrix3::from_vec_col(&v.column(k)).scale(c[k])).collect();
            let a0 = amps[zero_index];
            (Some(amps), Some(a0))
        }
        None => (None, None),
    };
    Ok(SpectralDecomposition { lambdas: sorted, modes, zero_index, amplitudes, a0 })
}

/// Fixed point of `l`: the smallest right singular vector, Hermitized and
/// trace-normalized.
pub fn steady_state(l: &Superoperator) -> Result<DensityMatrix3> {
    let (sv, v) = svd_jacobi(&l.m)?;
    let cut = 1e-8 * l.norm();
    let count = sv.iter().filter(|s| **s < cut).count();
    if count >= 2 {
        return Err(Error::DegenerateKernel { count });
    }
    let k = (0..DIM).min_by(|&a, &b| sv[a].total_cmp(&sv[b])).unwrap_or(0);
    let rho = ComplexMatrix3::from_vec_col(&v.column(k));
    let tr = rho.trace();
    if tr.norm() == 0.0 {
        return Err(Error::DomainError("null vector of the Liouvillian is traceless".into()));
    }
    Ok(DensityMatrix3(hermitian_part(&rho.scale(1.0 / tr))))
}
