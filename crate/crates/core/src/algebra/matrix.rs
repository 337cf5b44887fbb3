use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Dense 3×3 complex matrix stored row-major.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexMatrix3(pub [[Complex64; 3]; 3]);

/// Dense 2×2 complex matrix stored row-major.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexMatrix2(pub [[Complex64; 2]; 2]);

pub type Vector3 = [Complex64; 3];

impl ComplexMatrix3 {
    pub const fn zero() -> Self {
        ComplexMatrix3([[ZERO; 3]; 3])
    }

    pub const fn identity() -> Self {
        ComplexMatrix3([[ONE, ZERO, ZERO], [ZERO, ONE, ZERO], [ZERO, ZERO, ONE]])
    }

    /// Builds a matrix from rows, rejecting NaN or infinite entries.
    pub fn try_from_rows(rows: [[Complex64; 3]; 3]) -> Result<Self> {
        if rows.iter().flatten().all(|z| z.re.is_finite() && z.im.is_finite()) {
            Ok(ComplexMatrix3(rows))
        } else {
            Err(Error::InvalidParameter("matrix has non-finite entries".into()))
        }
    }

    pub fn from_real(rows: [[f64; 3]; 3]) -> Self {
        Self::from_fn(|i, j| Complex64::new(rows[i][j], 0.0))
    }

    pub fn from_fn(mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zero();
        for i in 0..3 {
            for j in 0..3 {
                m.0[i][j] = f(i, j);
            }
        }
        m
    }

    pub fn diag(d: [f64; 3]) -> Self {
        Self::from_fn(|i, j| if i == j { Complex64::new(d[i], 0.0) } else { ZERO })
    }

    pub fn dagger(&self) -> Self {
        Self::from_fn(|i, j| self.0[j][i].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(|i, j| self.0[j][i])
    }

    pub fn trace(&self) -> Complex64 {
        self.0[0][0] + self.0[1][1] + self.0[2][2]
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self::from_fn(|i, j| self.0[i][j] * s)
    }

    pub fn scale_re(&self, s: f64) -> Self {
        Self::from_fn(|i, j| self.0[i][j] * s)
    }

    pub fn commutator(&self, other: &Self) -> Self {
        *self * *other - *other * *self
    }

    pub fn mul_vec(&self, v: &Vector3) -> Vector3 {
        let m = &self.0;
        [
            m[0][0] * v[0] + m[0][1] * v[1] + m[0][2] * v[2],
            m[1][0] * v[0] + m[1][1] * v[1] + m[1][2] * v[2],
            m[2][0] * v[0] + m[2][1] * v[1] + m[2][2] * v[2],
        ]
    }

    /// Frobenius norm.
    pub fn norm(&self) -> f64 {
        self.0.iter().flatten().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise deviation from Hermiticity.
    pub fn hermitian_deviation(&self) -> f64 {
        (*self - self.dagger()).max_abs()
    }

    /// Exact Hermiticity: every entry equals the conjugate of its mirror.
    pub fn is_exactly_hermitian(&self) -> bool {
        (0..3).all(|i| (0..3).all(|j| self.0[i][j] == self.0[j][i].conj()))
    }

    /// Column-major vectorisation: `vec[i + 3 j] = m[i][j]`.
    pub fn to_vec_col(&self) -> [Complex64; 9] {
        let mut v = [ZERO; 9];
        for j in 0..3 {
            for i in 0..3 {
                v[i + 3 * j] = self.0[i][j];
            }
        }
        v
    }

    pub fn from_vec_col(v: &[Complex64]) -> Self {
        assert_eq!(v.len(), 9, "vectorised 3x3 matrix must have 9 entries");
        Self::from_fn(|i, j| v[i + 3 * j])
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().flatten().all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

impl Default for ComplexMatrix3 {
    fn default() -> Self {
        Self::zero()
    }
}

impl Index<(usize, usize)> for ComplexMatrix3 {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.0[i][j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix3 {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.0[i][j]
    }
}

impl Add for ComplexMatrix3 {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::from_fn(|i, j| self.0[i][j] + rhs.0[i][j])
    }
}

impl AddAssign for ComplexMatrix3 {
    fn add_assign(&mut self, rhs: Self) {
        for i in 0..3 {
            for j in 0..3 {
                self.0[i][j] += rhs.0[i][j];
            }
        }
    }
}

impl Sub for ComplexMatrix3 {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::from_fn(|i, j| self.0[i][j] - rhs.0[i][j])
    }
}

impl Neg for ComplexMatrix3 {
    type Output = Self;
    fn neg(self) -> Self {
        Self::from_fn(|i, j| -self.0[i][j])
    }
}

impl Mul for ComplexMatrix3 {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self::from_fn(|i, j| self.0[i][0] * rhs.0[0][j] + self.0[i][1] * rhs.0[1][j] + self.0[i][2] * rhs.0[2][j])
    }
}

impl ComplexMatrix2 {
    pub const fn identity() -> Self {
        ComplexMatrix2([[ONE, ZERO], [ZERO, ONE]])
    }

    pub fn from_fn(mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        ComplexMatrix2([[f(0, 0), f(0, 1)], [f(1, 0), f(1, 1)]])
    }

    pub fn dagger(&self) -> Self {
        Self::from_fn(|i, j| self.0[j][i].conj())
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise deviation of `U†U` from the identity.
    pub fn unitary_deviation(&self) -> f64 {
        let p = self.dagger() * *self;
        (p - Self::identity()).max_abs()
    }

    pub fn mul_vec(&self, v: &[Complex64; 2]) -> [Complex64; 2] {
        [self.0[0][0] * v[0] + self.0[0][1] * v[1], self.0[1][0] * v[0] + self.0[1][1] * v[1]]
    }
}

impl Sub for ComplexMatrix2 {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::from_fn(|i, j| self.0[i][j] - rhs.0[i][j])
    }
}

impl Mul for ComplexMatrix2 {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self::from_fn(|i, j| self.0[i][0] * rhs.0[0][j] + self.0[i][1] * rhs.0[1][j])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vec_col_layout() {
        let m = ComplexMatrix3::from_fn(|i, j| Complex64::new((3 * i + j) as f64, 0.0));
        let v = m.to_vec_col();
        assert_eq!(v[1].re, 3.0);
        assert_eq!(v[3].re, 1.0);
        assert_eq!(ComplexMatrix3::from_vec_col(&v), m);
    }

    #[test]
    fn rejects_non_finite() {
        let mut rows = [[ZERO; 3]; 3];
        rows[1][2] = Complex64::new(f64::NAN, 0.0);
        assert!(ComplexMatrix3::try_from_rows(rows).is_err());
    }
}
