//! Small dense complex linear algebra: LU solves, Schur-based eigenpairs and
//! one-sided Jacobi SVD.

use num_complex::Complex64;

use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Square row-major complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct DMat {
    pub n: usize,
    pub a: Vec<Complex64>,
}

impl DMat {
    pub fn zeros(n: usize) -> Self {
        Self { n, a: vec![ZERO; n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn mul_vec(&self, x: &[Complex64]) -> Vec<Complex64> {
        (0..self.n).map(|i| (0..self.n).map(|j| self[(i, j)] * x[j]).sum()).collect()
    }


    pub fn norm_fro(&self) -> f64 {
        self.a.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn norm_1(&self) -> f64 {
        (0..self.n).map(|j| (0..self.n).map(|i| self[(i, j)].norm()).sum::<f64>()).fold(0.0, f64::max)
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.n).map(|i| self[(i, j)]).collect()
    }

    pub fn is_finite(&self) -> bool {
        self.a.iter().all(|c| c.re.is_finite() && c.im.is_finite())
    }
}

impl std::ops::Index<(usize, usize)> for DMat {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.a[i * self.n + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for DMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.a[i * self.n + j]
    }
}

/// LU factorization with partial pivoting.
#[derive(Debug, Clone)]
pub(crate) struct Lu {
    lu: DMat,
    perm: Vec<usize>,
    norm_1: f64,
}

impl Lu {
    pub fn new(m: &DMat) -> Result<Self> {
        let n = m.n;
        let mut lu = m.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        for k in 0..n {
            let p = (k..n).max_by(|&i, &j| lu[(i, k)].norm().total_cmp(&lu[(j, k)].norm())).unwrap_or(k);
            if lu[(p, k)].norm() == 0.0 {
                return Err(Error::IllConditioned { estimate: f64::INFINITY });
            }
            if p != k {
                for j in 0..n {
                    lu.a.swap(k * n + j, p * n + j);
                }
                perm.swap(k, p);
            }
            let piv = lu[(k, k)];
            for i in k + 1..n {
                let f = lu[(i, k)] / piv;
                lu[(i, k)] = f;
                for j in k + 1..n {
                    let v = lu[(k, j)];
                    lu[(i, j)] -= f * v;
                }
            }
        }
        Ok(Self { lu, perm, norm_1: m.norm_1() })
    }

    pub fn solve(&self, b: &[Complex64]) -> Vec<Complex64> {
        let n = self.lu.n;
        let mut x: Vec<Complex64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            for j in 0..i {
                let v = self.lu[(i, j)] * x[j];
                x[i] -= v;
            }
        }
        for i in (0..n).rev() {
            for j in i + 1..n {
                let v = self.lu[(i, j)] * x[j];
                x[i] -= v;
            }
            x[i] /= self.lu[(i, i)];
        }
        x
    }

    /// `‖A‖₁·‖A⁻¹‖₁` from the explicit inverse.
    pub fn condition(&self) -> f64 {
        let n = self.lu.n;
        let mut inv_norm = 0.0f64;
        for j in 0..n {
            let mut e = vec![ZERO; n];
            e[j] = ONE;
            let col = self.solve(&e);
            inv_norm = inv_norm.max(col.iter().map(|c| c.norm()).sum());
        }
        self.norm_1 * inv_norm
    }
}

/// Givens rotation `(c, s)` with `[c s; −s̄ c]·[a; b] = [r; 0]`.
fn givens(a: Complex64, b: Complex64) -> (f64, Complex64) {
    let na = a.norm();
    let nb = b.norm();
    if nb == 0.0 {
        return (1.0, ZERO);
    }
    if na == 0.0 {
        return (0.0, b.conj() / nb);
    }
    let r = na.hypot(nb);
    (na / r, (a / na) * b.conj() / r)
}

/// Reduces `m` to upper Hessenberg form `Qᴴ m Q`, returning `(H, Q)`.
fn hessenberg(m: &DMat) -> (DMat, DMat) {
    let n = m.n;
    let mut h = m.clone();
    let mut q = DMat::identity(n);
    for k in 0..n.saturating_sub(2) {
        let x: Vec<Complex64> = (k + 1..n).map(|i| h[(i, k)]).collect();
        let xn = x.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if xn == 0.0 {
            continue;
        }
        let phase = if x[0].norm() == 0.0 { ONE } else { x[0] / x[0].norm() };
        let alpha = -phase * xn;
        let mut v = x.clone();
        v[0] -= alpha;
        let vn = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if vn == 0.0 {
            continue;
        }
        for c in v.iter_mut() {
            *c /= vn;
        }
        // H ← (I − 2vvᴴ) H
        for j in 0..n {
            let dot: Complex64 = (0..v.len()).map(|i| v[i].conj() * h[(k + 1 + i, j)]).sum();
            for i in 0..v.len() {
                h[(k + 1 + i, j)] -= 2.0 * v[i] * dot;
            }
        }
        // H ← H (I − 2vvᴴ), Q ← Q (I − 2vvᴴ)
        for mat in [&mut h, &mut q] {
            for i in 0..n {
                let dot: Complex64 = (0..v.len()).map(|j| mat[(i, k + 1 + j)] * v[j]).sum();
                for j in 0..v.len() {
                    mat[(i, k + 1 + j)] -= 2.0 * dot * v[j].conj();
                }
            }
        }
        for i in k + 2..n {
            h[(i, k)] = ZERO;
        }
    }
    (h, q)
}

/// Complex Schur form `m = Z T Zᴴ` by shifted QR on the Hessenberg form.
pub(crate) fn schur(m: &DMat) -> Result<(DMat, DMat)> {
    let n = m.n;
    let (mut t, mut z) = hessenberg(m);
    let budget = 30 * n.max(1);
    let mut iterations = 0;
    let mut hi = n.saturating_sub(1);
    let mut since_deflation = 0;
    while hi > 0 {
        // find the start of the unreduced block ending at hi
        let mut l = hi;
        while l > 0 {
            let s = t[(l - 1, l - 1)].norm() + t[(l, l)].norm();
            let s = if s == 0.0 { t.norm_fro() } else { s };
            if t[(l, l - 1)].norm() <= f64::EPSILON * s {
                t[(l, l - 1)] = ZERO;
                break;
            }
            l -= 1;
        }
        if l == hi {
            hi -= 1;
            since_deflation = 0;
            continue;
        }
        iterations += 1;
        since_deflation += 1;
        if iterations > budget {
            return Err(Error::QrNoConvergence { sweeps: budget });
        }
        let mu = if since_deflation % 11 == 10 {
            // exceptional shift
            t[(hi, hi)] + 0.75 * t[(hi, hi - 1)].norm()
        } else {
            wilkinson(t[(hi - 1, hi - 1)], t[(hi - 1, hi)], t[(hi, hi - 1)], t[(hi, hi)])
        };
        for i in l..=hi {
            t[(i, i)] -= mu;
        }
        let mut rots = Vec::with_capacity(hi - l);
        for k in l..hi {
            let (c, s) = givens(t[(k, k)], t[(k + 1, k)]);
            for j in k..n {
                let (x, y) = (t[(k, j)], t[(k + 1, j)]);
                t[(k, j)] = c * x + s * y;
                t[(k + 1, j)] = -s.conj() * x + c * y;
            }
            t[(k + 1, k)] = ZERO;
            rots.push((k, c, s));
        }
        for &(k, c, s) in &rots {
            let top = (k + 2).min(hi);
            for i in 0..=top {
                let (x, y) = (t[(i, k)], t[(i, k + 1)]);
                t[(i, k)] = x * c + y * s.conj();
                t[(i, k + 1)] = -x * s + y * c;
            }
            for i in 0..n {
                let (x, y) = (z[(i, k)], z[(i, k + 1)]);
                z[(i, k)] = x * c + y * s.conj();
                z[(i, k + 1)] = -x * s + y * c;
            }
        }
        for i in l..=hi {
            t[(i, i)] += mu;
        }
    }
    Ok((t, z))
}

/// Eigenvalue of `[[a, b], [c, d]]` closest to `d`.
fn wilkinson(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Complex64 {
    let half = (a - d) * 0.5;
    let disc = (half * half + b * c).sqrt();
    let m = (a + d) * 0.5;
    let (l1, l2) = (m + disc, m - disc);
    if (l1 - d).norm() < (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

/// Eigenvalues and unit eigenvectors (columns) of a general complex matrix.
pub(crate) fn eig(m: &DMat) -> Result<(Vec<Complex64>, DMat)> {
    if !m.is_finite() {
        return Err(Error::InvalidParameter("matrix has non-finite entries".into()));
    }
    let n = m.n;
    let (t, z) = schur(m)?;
    let lambdas: Vec<Complex64> = (0..n).map(|i| t[(i, i)]).collect();
    let small = f64::EPSILON * t.norm_fro().max(f64::MIN_POSITIVE);
    let mut vecs = DMat::zeros(n);
    for k in 0..n {
        let mut x = vec![ZERO; n];
        x[k] = ONE;
        for i in (0..k).rev() {
            let s: Complex64 = (i + 1..=k).map(|j| t[(i, j)] * x[j]).sum();
            let mut d = t[(i, i)] - lambdas[k];
            if d.norm() < small {
                d = Complex64::new(small, 0.0);
            }
            x[i] = -s / d;
        }
        let v = z.mul_vec(&x);
        let vn = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        for i in 0..n {
            vecs[(i, k)] = v[i] / vn;
        }
    }
    Ok((lambdas, vecs))
}

/// One-sided Jacobi SVD: singular values (unsorted) and right singular
/// vectors as columns of `V`.
pub(crate) fn svd_jacobi(m: &DMat) -> Result<(Vec<f64>, DMat)> {
    let n = m.n;
    let mut a = m.clone();
    let mut v = DMat::identity(n);
    // columns below this squared norm are numerically zero
    let floor = (f64::EPSILON * m.norm_fro()).powi(2);
    const SWEEPS: usize = 60;
    for sweep in 0..=SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let mut alpha = 0.0;
                let mut beta = 0.0;
                let mut gamma = ZERO;
                for i in 0..n {
                    alpha += a[(i, p)].norm_sqr();
                    beta += a[(i, q)].norm_sqr();
                    gamma += a[(i, p)].conj() * a[(i, q)];
                }
                let g = gamma.norm();
                if g <= f64::EPSILON * (alpha * beta).sqrt() || alpha <= floor || beta <= floor {
                    continue;
                }
                rotated = true;
                let e = gamma / g;
                let zeta = (beta - alpha) / (2.0 * g);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                for mat in [&mut a, &mut v] {
                    for i in 0..n {
                        let (x, y) = (mat[(i, p)], mat[(i, q)]);
                        mat[(i, p)] = c * x - s * e.conj() * y;
                        mat[(i, q)] = s * e * x + c * y;
                    }
                }
            }
        }
        if !rotated {
            let sv = (0..n).map(|j| (0..n).map(|i| a[(i, j)].norm_sqr()).sum::<f64>().sqrt()).collect();
            return Ok((sv, v));
        }
        if sweep == SWEEPS {
            break;
        }
    }
    Err(Error::NoConvergence { what: "Jacobi SVD", budget: SWEEPS })
}
