//! Complex Gamma function (Lanczos, g = 7, nine terms) with reflection.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

const POLE_TOL: f64 = 1e-12;

/// Distance from `z` to the nearest non-positive integer, if that integer is
/// the closest integer.
fn pole_distance(z: Complex64) -> Option<f64> {
    let n = z.re.round();
    if n <= 0.0 {
        Some(Complex64::new(z.re - n, z.im).norm())
    } else {
        None
    }
}

/// `sin(π z)` with the real part reduced first so zeros near integers keep
/// their relative accuracy.
fn sin_pi(z: Complex64) -> Complex64 {
    let n = z.re.round();
    let r = Complex64::new(z.re - n, z.im) * PI;
    let s = r.sin();
    if n.rem_euclid(2.0) == 1.0 {
        -s
    } else {
        s
    }
}

/// `ln Γ(z)` up to a multiple of `2πi`, valid for `Re z ≥ 0.5`.
fn lanczos_ln_gamma(z: Complex64) -> Complex64 {
    let zm = z - 1.0;
    let mut acc = Complex64::new(LANCZOS[0], 0.0);
    for (k, &c) in LANCZOS.iter().enumerate().skip(1) {
        acc += c / (zm + k as f64);
    }
    let t = zm + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (zm + 0.5) * t.ln() - t + acc.ln()
}

/// `Γ(z)`; `PoleError` within 1e-12 of a non-positive integer.
pub fn gamma_complex(z: Complex64) -> Result<Complex64> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::InvalidParameter(format!("gamma argument {z} is not finite")));
    }
    if let Some(d) = pole_distance(z) {
        if d <= POLE_TOL {
            return Err(Error::PoleError { function: "gamma", at: format!("{z}") });
        }
    }
    if z.re < 0.5 {
        // Γ(z) Γ(1-z) = π / sin(πz)
        Ok(PI / (sin_pi(z) * lanczos_ln_gamma(1.0 - z).exp()))
    } else {
        Ok(lanczos_ln_gamma(z).exp())
    }
}

/// `1/Γ(z)`, an entire function: exactly zero at the poles of `Γ`.
pub fn rgamma(z: Complex64) -> Complex64 {
    if z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round() {
        return Complex64::new(0.0, 0.0);
    }
    if z.re < 0.5 {
        sin_pi(z) * lanczos_ln_gamma(1.0 - z).exp() / PI
    } else {
        (-lanczos_ln_gamma(z)).exp()
    }
}
