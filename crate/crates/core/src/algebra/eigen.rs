//! Hermitian 3×3 eigenproblems.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::matrix::ComplexMatrix3;
use crate::error::{Error, Result};

const HERMITIAN_TOL: f64 = 1e-12;

fn check_hermitian(h: &ComplexMatrix3) -> Result<()> {
    let dev = h.hermitian_deviation();
    if dev > HERMITIAN_TOL * h.max_abs().max(1.0) || !h.is_finite() {
        return Err(Error::NonHermitianInput { deviation: dev });
    }
    Ok(())
}

/// Ascending eigenvalues of a Hermitian matrix.
///
/// Uses the trigonometric solution of the characteristic cubic; when the cubic
/// discriminant is within 1e-14 of zero (near-degenerate spectrum) the
/// eigenvalues come from Jacobi iteration instead.
pub fn eigenvalues_hermitian3(h: &ComplexMatrix3) -> Result<[f64; 3]> {
    check_hermitian(h)?;
    let m = &h.0;
    let a00 = m[0][0].re;
    let a11 = m[1][1].re;
    let a22 = m[2][2].re;
    let off = m[0][1].norm_sqr() + m[0][2].norm_sqr() + m[1][2].norm_sqr();
    if off == 0.0 {
        let mut d = [a00, a11, a22];
        d.sort_by(|x, y| x.total_cmp(y));
        return Ok(d);
    }
    let q = (a00 + a11 + a22) / 3.0;
    let p2 = (a00 - q).powi(2) + (a11 - q).powi(2) + (a22 - q).powi(2) + 2.0 * off;
    let p = (p2 / 6.0).sqrt();
    // B = (H - qI)/p; det(B) is real for Hermitian B
    let b = h.scale_re(1.0 / p) - ComplexMatrix3::identity().scale_re(q / p);
    let r = 0.5 * det3(&b).re;
    if 1.0 - r * r < 1e-14 {
        return Ok(eigh3(h)?.0);
    }
    let phi = r.clamp(-1.0, 1.0).acos() / 3.0;
    let hi = q + 2.0 * p * phi.cos();
    let lo = q + 2.0 * p * (phi + 2.0 * PI / 3.0).cos();
    let mid = 3.0 * q - hi - lo;
    Ok([lo, mid, hi])
}

fn det3(m: &ComplexMatrix3) -> Complex64 {
    let a = &m.0;
    a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
        + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
}

/// Eigen-decomposition by cyclic complex Jacobi rotations.
///
/// Returns ascending eigenvalues and the unitary matrix whose columns are the
/// corresponding eigenvectors.
pub fn eigh3(h: &ComplexMatrix3) -> Result<([f64; 3], ComplexMatrix3)> {
    check_hermitian(h)?;
    let mut a = *h;
    let mut v = ComplexMatrix3::identity();
    let scale = h.norm().max(f64::MIN_POSITIVE);
    for _sweep in 0..50 {
        let off = (a[(0, 1)].norm_sqr() + a[(0, 2)].norm_sqr() + a[(1, 2)].norm_sqr()).sqrt();
        if off <= 1e-17 * scale {
            break;
        }
        for &(p, q) in &[(0usize, 1usize), (0, 2), (1, 2)] {
            let apq = a[(p, q)];
            let mag = apq.norm();
            if mag == 0.0 {
                continue;
            }
            let phase = apq / mag;
            let tau = (a[(q, q)].re - a[(p, p)].re) / (2.0 * mag);
            let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
            let c = 1.0 / (1.0 + t * t).sqrt();
            let s = t * c;
            let mut j = ComplexMatrix3::identity();
            j[(p, p)] = Complex64::new(c, 0.0);
            j[(p, q)] = Complex64::new(s, 0.0);
            j[(q, p)] = -phase.conj() * s;
            j[(q, q)] = phase.conj() * c;
            a = j.dagger() * a * j;
            // keep the working matrix exactly Hermitian
            for i in 0..3 {
                a[(i, i)] = Complex64::new(a[(i, i)].re, 0.0);
            }
            a[(q, p)] = Complex64::new(0.0, 0.0);
            a[(p, q)] = Complex64::new(0.0, 0.0);
            v = v * j;
        }
    }
    let mut order = [0usize, 1, 2];
    order.sort_by(|&x, &y| a[(x, x)].re.total_cmp(&a[(y, y)].re));
    let vals = [a[(order[0], order[0])].re, a[(order[1], order[1])].re, a[(order[2], order[2])].re];
    let vecs = ComplexMatrix3::from_fn(|i, k| v[(i, order[k])]);
    Ok((vals, vecs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_hamiltonian, LZParams};

    fn residual(h: &ComplexMatrix3, vals: &[f64; 3], vecs: &ComplexMatrix3) -> f64 {
        let mut worst: f64 = 0.0;
        for k in 0..3 {
            let v = [vecs[(0, k)], vecs[(1, k)], vecs[(2, k)]];
            let hv = h.mul_vec(&v);
            let r: f64 = (0..3).map(|i| (hv[i] - v[i] * vals[k]).norm_sqr()).sum::<f64>().sqrt();
            worst = worst.max(r);
        }
        worst
    }

    #[test]
    fn origin_spectrum() {
        let h = build_hamiltonian(&LZParams::symmetric(-1.0, 1.0), 0.0);
        let e = eigenvalues_hermitian3(&h).unwrap();
        let s = 2f64.sqrt();
        for (x, y) in e.iter().zip([-s, 0.0, s]) {
            assert!((x - y).abs() < 1e-14);
        }
    }

    #[test]
    fn diagonal_input_sorted() {
        let e = eigenvalues_hermitian3(&ComplexMatrix3::diag([3.0, 1.0, 2.0])).unwrap();
        assert_eq!(e, [1.0, 2.0, 3.0]);
    }

    #[test]
    fn middle_eigenvalue_vanishes_for_symmetric_coupling() {
        let p = LZParams::symmetric(-1.0, 1.3);
        for k in -40..=40 {
            let e = eigenvalues_hermitian3(&build_hamiltonian(&p, k as f64 * 0.25)).unwrap();
            assert!(e[1].abs() < 1e-12);
        }
    }

    #[test]
    fn rejects_non_hermitian() {
        let mut h = ComplexMatrix3::diag([1.0, 2.0, 3.0]);
        h[(0, 1)] = Complex64::new(1.0, 0.0);
        assert!(matches!(eigenvalues_hermitian3(&h), Err(Error::NonHermitianInput { .. })));
    }

    #[test]
    fn jacobi_residuals_complex_input() {
        let i = Complex64::new(0.0, 1.0);
        let mut h = ComplexMatrix3::diag([0.3, -1.2, 2.0]);
        h[(0, 1)] = Complex64::new(0.5, 0.0) + i * 0.7;
        h[(1, 0)] = h[(0, 1)].conj();
        h[(1, 2)] = -i * 1.1;
        h[(2, 1)] = h[(1, 2)].conj();
        h[(0, 2)] = Complex64::new(-0.4, 0.2);
        h[(2, 0)] = h[(0, 2)].conj();
        let (vals, vecs) = eigh3(&h).unwrap();
        assert!(residual(&h, &vals, &vecs) <= 1e-10 * h.norm());
        let trig = eigenvalues_hermitian3(&h).unwrap();
        for k in 0..3 {
            assert!((vals[k] - trig[k]).abs() < 1e-12);
        }
        let gram = vecs.dagger() * vecs;
        assert!((gram - ComplexMatrix3::identity()).max_abs() < 1e-13);
    }

    #[test]
    fn degenerate_spectrum_uses_fallback() {
        // 2 I + rank-one perturbation: eigenvalues (2, 2, 5)
        let h = ComplexMatrix3::from_real([[3.0, 1.0, 1.0], [1.0, 3.0, 1.0], [1.0, 1.0, 3.0]]);
        let e = eigenvalues_hermitian3(&h).unwrap();
        assert!((e[0] - 2.0).abs() < 1e-12 && (e[1] - 2.0).abs() < 1e-12 && (e[2] - 5.0).abs() < 1e-12);
    }
}
