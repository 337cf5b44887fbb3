use lz3_core::algebra::{
    build_hamiltonian, eigenvalues_hermitian3, from_gellmann_coefficients, gellmann_coefficients, symmetric_square,
    ComplexMatrix2, ComplexMatrix3, LZParams,
};
use num_complex::Complex64;
use proptest::prelude::*;

fn su2(alpha: f64, beta: f64, gamma: f64, phase: f64) -> ComplexMatrix2 {
    // e^{iφ} Rz(α) Ry(β) Rz(γ)
    let (c, s) = ((beta / 2.0).cos(), (beta / 2.0).sin());
    let e = |x: f64| Complex64::from_polar(1.0, x);
    let g = e(phase);
    ComplexMatrix2([
        [g * e(-(alpha + gamma) / 2.0) * c, -g * e(-(alpha - gamma) / 2.0) * s],
        [g * e((alpha - gamma) / 2.0) * s, g * e((alpha + gamma) / 2.0) * c],
    ])
}

fn angles() -> impl Strategy<Value = (f64, f64, f64, f64)> {
    (-6.3..6.3f64, 0.0..3.15f64, -6.3..6.3f64, -3.15..3.15f64)
}

proptest! {
    #[test]
    fn symmetric_square_is_homomorphism(x in angles(), y in angles()) {
        let u = su2(x.0, x.1, x.2, x.3);
        let v = su2(y.0, y.1, y.2, y.3);
        let lhs = symmetric_square(&(u * v)).unwrap();
        let rhs = symmetric_square(&u).unwrap() * symmetric_square(&v).unwrap();
        prop_assert!((lhs - rhs).max_abs() <= 1e-12);
    }

    #[test]
    fn symmetric_square_is_unitary(x in angles()) {
        let s = symmetric_square(&su2(x.0, x.1, x.2, x.3)).unwrap();
        prop_assert!((s.dagger() * s - ComplexMatrix3::identity()).max_abs() <= 1e-12);
    }

    #[test]
    fn gellmann_expansion_is_complete(
        d in prop::array::uniform2(-5.0..5.0f64),
        off in prop::array::uniform6(-5.0..5.0f64),
    ) {
        let z = |re: f64, im: f64| Complex64::new(re, im);
        let (d0, d1) = (d[0], d[1]);
        let m = ComplexMatrix3([
            [z(d0, 0.0), z(off[0], off[1]), z(off[2], off[3])],
            [z(off[0], -off[1]), z(d1, 0.0), z(off[4], off[5])],
            [z(off[2], -off[3]), z(off[4], -off[5]), z(-d0 - d1, 0.0)],
        ]);
        let back = from_gellmann_coefficients(&gellmann_coefficients(&m));
        prop_assert!((back - m).max_abs() <= 1e-12);
    }

    #[test]
    fn hamiltonian_is_exactly_hermitian(a in -5.0..5.0f64, delta in -5.0..5.0f64, omega in -5.0..5.0f64, t in -50.0..50.0f64) {
        let h = build_hamiltonian(&LZParams::new(a, delta, omega), t);
        prop_assert!(h.is_exactly_hermitian());
    }

    #[test]
    fn symmetric_spectrum_is_balanced(a in -3.0..3.0f64, delta in 0.1..3.0f64, t in -20.0..20.0f64) {
        let ev = eigenvalues_hermitian3(&build_hamiltonian(&LZParams::symmetric(a, delta), t)).unwrap();
        let e = ((a * t).powi(2) + 2.0 * delta * delta).sqrt();
        prop_assert!((ev[0] + e).abs() <= 1e-10);
        prop_assert!(ev[1].abs() <= 1e-10);
        prop_assert!((ev[2] - e).abs() <= 1e-10);
    }
}
