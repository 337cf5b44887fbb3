use std::f64::consts::SQRT_2;

use super::matrix::{ComplexMatrix2, ComplexMatrix3};
use crate::error::{Error, Result};

/// Spin-1 image of a spin-1/2 unitary.
///
/// The spin-1 basis `(|+1⟩, |0⟩, |-1⟩)` is identified with
/// `(|↑↑⟩, (|↑↓⟩ + |↓↑⟩)/√2, |↓↓⟩)`, so `exp(-i φ σ_k / 2)` maps to
/// `exp(-i φ S_k)`.
pub fn symmetric_square(u: &ComplexMatrix2) -> Result<ComplexMatrix3> {
    let dev = u.unitary_deviation();
    if !(dev <= 1e-10) {
        return Err(Error::NonUnitaryInput { deviation: dev });
    }
    Ok(symmetric_square_unchecked(u))
}

pub(crate) fn symmetric_square_unchecked(u: &ComplexMatrix2) -> ComplexMatrix3 {
    let [[al, be], [ga, de]] = u.0;
    ComplexMatrix3([
        [al * al, al * be * SQRT_2, be * be],
        [al * ga * SQRT_2, al * de + be * ga, be * de * SQRT_2],
        [ga * ga, ga * de * SQRT_2, de * de],
    ])
}
