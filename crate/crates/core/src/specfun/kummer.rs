//! Kummer's confluent hypergeometric function `M(a, b, z) = ₁F₁(a; b; z)`.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::ddouble::CDd;
use super::gamma::rgamma;
use crate::error::{Error, Result};

const MAX_TERMS: usize = 100_000;
const TERM_TOL: f64 = 1e-17;
/// Cancellation ratio above which the f64 sum is recomputed in double-double.
pub(crate) const ESCALATE_RATIO: f64 = 1e6;
/// Beyond this modulus the large-argument expansion is used.
pub const ASYMPTOTIC_RADIUS: f64 = 40.0;

/// Outcome of a power-series evaluation.
#[derive(Debug, Clone, Copy)]
pub(crate) struct SeriesSum {
    pub value: Complex64,
    /// Largest term modulus encountered.
    pub max_term: f64,
    /// Rounding unit of the accumulation that produced `value`.
    pub unit: f64,
    pub terms: usize,
}

impl SeriesSum {
    pub fn cancellation(&self) -> f64 {
        self.max_term / self.value.norm().max(f64::MIN_POSITIVE)
    }

    /// Absolute rounding-error estimate of the summation.
    pub fn abs_error(&self) -> f64 {
        4.0 * self.unit * self.max_term * (self.terms as f64).sqrt().max(1.0)
    }
}

fn check_b(b: Complex64) -> Result<()> {
    let n = b.re.round();
    if n <= 0.0 && Complex64::new(b.re - n, b.im).norm() <= 1e-12 {
        return Err(Error::PoleError { function: "kummer_m", at: format!("b = {b}") });
    }
    Ok(())
}

/// Neumaier-compensated f64 summation of the power series.
pub(crate) fn series_f64(a: Complex64, b: Complex64, z: Complex64) -> Result<SeriesSum> {
    let mut term = Complex64::new(1.0, 0.0);
    let (mut sr, mut si) = (1.0f64, 0.0f64);
    let (mut cr, mut ci) = (0.0f64, 0.0f64);
    let mut max_term = 1.0f64;
    let mut small = 0;
    for k in 0..MAX_TERMS {
        let kf = k as f64;
        term = term * (a + kf) * z / ((b + kf) * (kf + 1.0));
        let tn = term.norm();
        max_term = max_term.max(tn);
        neumaier(&mut sr, &mut cr, term.re);
        neumaier(&mut si, &mut ci, term.im);
        let sum = Complex64::new(sr + cr, si + ci).norm();
        if tn == 0.0 {
            return Ok(SeriesSum {
                value: Complex64::new(sr + cr, si + ci),
                max_term,
                unit: f64::EPSILON,
                terms: k + 2,
            });
        }
        if tn <= TERM_TOL * sum && kf > z.norm() {
            small += 1;
            if small >= 2 {
                return Ok(SeriesSum {
                    value: Complex64::new(sr + cr, si + ci),
                    max_term,
                    unit: f64::EPSILON,
                    terms: k + 2,
                });
            }
        } else {
            small = 0;
        }
        if !tn.is_finite() {
            break;
        }
    }
    Err(Error::NoConvergence { what: "kummer_m series", budget: MAX_TERMS })
}

#[inline]
fn neumaier(sum: &mut f64, comp: &mut f64, x: f64) {
    let t = *sum + x;
    if sum.abs() >= x.abs() {
        *comp += (*sum - t) + x;
    } else {
        *comp += (x - t) + *sum;
    }
    *sum = t;
}

/// Double-double summation; `a + k` and `b + k` are formed exactly.
pub(crate) fn series_dd(a: Complex64, b: Complex64, z: Complex64) -> Result<SeriesSum> {
    let mut term = CDd::ONE;
    let mut sum = CDd::ONE;
    let mut max_term = 1.0f64;
    let mut small = 0;
    let real_b = b.im == 0.0;
    for k in 0..MAX_TERMS {
        let kf = k as f64;
        term = (term * CDd::shifted(a, kf)).mul_c64(z);
        term = if real_b {
            let d1 = super::ddouble::Dd::sum(b.re, kf);
            let d = d1.mul_f64(kf + 1.0);
            CDd { re: term.re.div(d), im: term.im.div(d) }
        } else {
            term.div(CDd::shifted(b, kf).mul_c64(Complex64::new(kf + 1.0, 0.0)))
        };
        sum = sum + term;
        let tn = term.norm_f64();
        max_term = max_term.max(tn);
        let sn = sum.norm_f64();
        if tn == 0.0 {
            return Ok(SeriesSum { value: sum.to_c64(), max_term, unit: 1e-32, terms: k + 2 });
        }
        if tn <= 1e-33 * sn && kf > z.norm() {
            small += 1;
            if small >= 2 {
                return Ok(SeriesSum { value: sum.to_c64(), max_term, unit: 1e-32, terms: k + 2 });
            }
        } else {
            small = 0;
        }
        if !tn.is_finite() {
            break;
        }
    }
    Err(Error::NoConvergence { what: "kummer_m double-double series", budget: MAX_TERMS })
}

/// Power series, recomputed in double-double when the f64 sum loses more than
/// six digits to cancellation.
pub(crate) fn kummer_series(a: Complex64, b: Complex64, z: Complex64) -> Result<SeriesSum> {
    let s = series_f64(a, b, z)?;
    if s.cancellation() > ESCALATE_RATIO {
        series_dd(a, b, z)
    } else {
        Ok(s)
    }
}

/// Large-|z| expansion combining the two Kummer solutions.
fn kummer_asymptotic(a: Complex64, b: Complex64, z: Complex64) -> Result<SeriesSum> {
    // M(a,b,z) ~ Γ(b)/Γ(a) e^z z^(a-b) Σ (b-a)_s (1-a)_s / (s! z^s)
    //          + Γ(b)/Γ(b-a) e^(±iπa) z^(-a) Σ (a)_s (a-b+1)_s / (s! (-z)^s)
    let gb = super::gamma::gamma_complex(b)?;
    let sign = if z.im >= 0.0 { 1.0 } else { -1.0 };
    let s1 = hyp2f0_tail(b - a, 1.0 - a, 1.0 / z)?;
    let s2 = hyp2f0_tail(a, a - b + 1.0, -1.0 / z)?;
    let i = Complex64::new(0.0, 1.0);
    let t1 = gb * rgamma(a) * z.exp() * z.powc(a - b);
    let t2 = gb * rgamma(b - a) * (i * PI * a * sign).exp() * z.powc(-a);
    let value = t1 * s1.0 + t2 * s2.0;
    let err = t1.norm() * s1.1 + t2.norm() * s2.1;
    Ok(SeriesSum { value, max_term: err / f64::EPSILON / 4.0, unit: f64::EPSILON, terms: 1 })
}

/// Truncated `₂F₀(p, q; ; w)` summed to its smallest term; returns the sum and
/// the modulus of the first omitted term.
pub(crate) fn hyp2f0_tail(p: Complex64, q: Complex64, w: Complex64) -> Result<(Complex64, f64)> {
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let mut prev = f64::INFINITY;
    for s in 0..500 {
        let sf = s as f64;
        let next = term * (p + sf) * (q + sf) * w / (sf + 1.0);
        let nn = next.norm();
        if nn == 0.0 {
            return Ok((sum, 0.0));
        }
        if nn >= prev || nn <= 1e-17 * sum.norm() {
            return Ok((sum, nn));
        }
        sum += next;
        prev = nn;
        term = next;
    }
    Err(Error::NoConvergence { what: "asymptotic expansion", budget: 500 })
}

/// Kummer's function `M(a, b, z)`.
///
/// Power series for `|z| ≤ 40` (compensated, escalating to double-double on
/// heavy cancellation); the two-solution asymptotic combination beyond.
pub fn kummer_m(a: Complex64, b: Complex64, z: Complex64) -> Result<Complex64> {
    check_b(b)?;
    if !(a.re.is_finite() && a.im.is_finite() && z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::InvalidParameter("kummer_m arguments must be finite".into()));
    }
    if z.norm() > ASYMPTOTIC_RADIUS {
        let s = kummer_asymptotic(a, b, z)?;
        let rel = s.abs_error() / s.value.norm().max(f64::MIN_POSITIVE);
        if rel > 1e-8 {
            return Err(Error::NoConvergence { what: "kummer_m asymptotic expansion", budget: 500 });
        }
        return Ok(s.value);
    }
    Ok(kummer_series(a, b, z)?.value)
}
