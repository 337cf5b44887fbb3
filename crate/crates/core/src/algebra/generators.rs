//! Spin-1 and Gell-Mann generators in the standard basis (S_z diagonal,
//! ordering m = +1, 0, -1).

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use super::matrix::ComplexMatrix3;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Returns `(S_x, S_y, S_z)`.
pub fn spin1_matrices() -> (ComplexMatrix3, ComplexMatrix3, ComplexMatrix3) {
    let r = FRAC_1_SQRT_2;
    let sx = ComplexMatrix3::from_real([[0.0, r, 0.0], [r, 0.0, r], [0.0, r, 0.0]]);
    let z = c(0.0, 0.0);
    let sy = ComplexMatrix3([[z, c(0.0, -r), z], [c(0.0, r), z, c(0.0, -r)], [z, c(0.0, r), z]]);
    let sz = ComplexMatrix3::diag([1.0, 0.0, -1.0]);
    (sx, sy, sz)
}

/// The eight Gell-Mann matrices `λ₁..λ₈` (index 0 holds `λ₁`).
pub fn gellmann_matrices() -> [ComplexMatrix3; 8] {
    let z = c(0.0, 0.0);
    let one = c(1.0, 0.0);
    let i = c(0.0, 1.0);
    let s3 = 1.0 / 3f64.sqrt();
    [
        ComplexMatrix3([[z, one, z], [one, z, z], [z, z, z]]),
        ComplexMatrix3([[z, -i, z], [i, z, z], [z, z, z]]),
        ComplexMatrix3::diag([1.0, -1.0, 0.0]),
        ComplexMatrix3([[z, z, one], [z, z, z], [one, z, z]]),
        ComplexMatrix3([[z, z, -i], [z, z, z], [i, z, z]]),
        ComplexMatrix3([[z, z, z], [z, z, one], [z, one, z]]),
        ComplexMatrix3([[z, z, z], [z, z, -i], [z, i, z]]),
        ComplexMatrix3::diag([s3, s3, -2.0 * s3]),
    ]
}

/// Expansion coefficients `c_j = Tr(M λ_j) / 2`; for traceless Hermitian `M`
/// these are real and `M = Σ c_j λ_j`.
pub fn gellmann_coefficients(m: &ComplexMatrix3) -> [f64; 8] {
    let basis = gellmann_matrices();
    let mut out = [0.0; 8];
    for (o, l) in out.iter_mut().zip(basis.iter()) {
        *o = 0.5 * (*m * *l).trace().re;
    }
    out
}

pub fn from_gellmann_coefficients(coeffs: &[f64; 8]) -> ComplexMatrix3 {
    gellmann_matrices().iter().zip(coeffs.iter()).fold(ComplexMatrix3::zero(), |acc, (l, &cj)| acc + l.scale_re(cj))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spin1_standard_form() {
        let (sx, _, sz) = spin1_matrices();
        assert_eq!(sz, ComplexMatrix3::diag([1.0, 0.0, -1.0]));
        let r = FRAC_1_SQRT_2;
        for i in 0..3 {
            for j in 0..3 {
                let expect = if (i as i32 - j as i32).abs() == 1 { r } else { 0.0 };
                assert_eq!(sx[(i, j)], c(expect, 0.0));
            }
        }
    }

    #[test]
    fn spin1_commutators() {
        let (sx, sy, sz) = spin1_matrices();
        let i = c(0.0, 1.0);
        // fl(1/√2)² = 0.5 + 2⁻⁵³, so the identity holds to one rounding
        assert!((sx.commutator(&sy) - sz.scale(i)).max_abs() <= f64::EPSILON);
        assert!((sy.commutator(&sz) - sx.scale(i)).max_abs() < 1e-15);
        assert!((sz.commutator(&sx) - sy.scale(i)).max_abs() < 1e-15);
        // Casimir S^2 = s(s+1) = 2
        let cas = sx * sx + sy * sy + sz * sz;
        assert!((cas - ComplexMatrix3::identity().scale_re(2.0)).max_abs() < 1e-15);
    }

    #[test]
    fn gellmann_convention() {
        let l = gellmann_matrices();
        assert_eq!(l[2], ComplexMatrix3::diag([1.0, -1.0, 0.0]));
        let s3 = 1.0 / 3f64.sqrt();
        assert_eq!(l[7], ComplexMatrix3::diag([s3, s3, -2.0 * s3]));
        assert_eq!((l[0] * l[1]).trace().re, 0.0);
    }

    #[test]
    fn gellmann_orthonormal_traceless_hermitian() {
        let l = gellmann_matrices();
        for (a, la) in l.iter().enumerate() {
            assert!(la.trace().norm() < 1e-15);
            assert!(la.is_exactly_hermitian());
            for (b, lb) in l.iter().enumerate() {
                let t = (*la * *lb).trace();
                let expect = if a == b { 2.0 } else { 0.0 };
                assert!((t - c(expect, 0.0)).norm() < 1e-14, "Tr(l{a} l{b}) = {t}");
            }
        }
    }
}
