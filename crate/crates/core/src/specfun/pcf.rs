//! Parabolic cylinder function `D_ν(z)` for complex order and argument.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::gamma::rgamma;
use super::kummer::{hyp2f0_tail, kummer_series, series_dd, SeriesSum};
use crate::error::{Error, Result};

/// Default radius beyond which the large-argument expansion is used.
pub const DEFAULT_Z_SWITCH: f64 = 10.0;
const TARGET_REL: f64 = 1e-12;
const ACCEPT_REL: f64 = 1e-6;
const MAX_TAYLOR_STEP: f64 = 0.4;

/// Order `ν` of `D_ν`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PcfOrder(Complex64);

impl PcfOrder {
    pub fn new(nu: Complex64) -> Result<Self> {
        if nu.re.is_finite() && nu.im.is_finite() {
            Ok(Self(nu))
        } else {
            Err(Error::InvalidParameter(format!("order {nu} is not finite")))
        }
    }

    pub fn real(nu: f64) -> Result<Self> {
        Self::new(Complex64::new(nu, 0.0))
    }

    pub fn value(self) -> Complex64 {
        self.0
    }

    /// `ν + k`.
    pub fn shifted(self, k: f64) -> Self {
        Self(self.0 + k)
    }
}

/// Argument `z` of `D_ν`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PcfArgument(Complex64);

impl PcfArgument {
    pub fn new(z: Complex64) -> Result<Self> {
        if z.re.is_finite() && z.im.is_finite() {
            Ok(Self(z))
        } else {
            Err(Error::InvalidParameter(format!("argument {z} is not finite")))
        }
    }

    pub fn real(z: f64) -> Result<Self> {
        Self::new(Complex64::new(z, 0.0))
    }

    pub fn value(self) -> Complex64 {
        self.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PcfConfig {
    pub z_switch: f64,
}

impl Default for PcfConfig {
    fn default() -> Self {
        Self { z_switch: DEFAULT_Z_SWITCH }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PcfMethod {
    Series,
    Asymptotic,
    /// Taylor integration of Weber's equation inward from the asymptotic radius.
    Continuation,
}

/// A value together with how it was obtained and its estimated relative error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PcfValue {
    pub value: Complex64,
    pub method: PcfMethod,
    pub rel_error: f64,
}

fn rel(abs: f64, value: Complex64) -> f64 {
    let m = value.norm();
    if m > 0.0 {
        abs / m
    } else if abs == 0.0 {
        0.0
    } else {
        f64::INFINITY
    }
}

/// `D_ν(z)` from the Kummer-function representation, regardless of `|z|`.
///
/// The two `M` sums run in double precision first and are redone in
/// double-double when the combined error estimate misses 1e-12.
pub fn pcf_d_series(nu: PcfOrder, z: PcfArgument) -> Result<PcfValue> {
    let v = pcf_series_with(nu, z, kummer_series)?;
    if v.rel_error <= TARGET_REL {
        return Ok(v);
    }
    let dd = pcf_series_with(nu, z, series_dd)?;
    Ok(if dd.rel_error < v.rel_error { dd } else { v })
}

fn pcf_series_with(
    nu: PcfOrder,
    z: PcfArgument,
    sum: fn(Complex64, Complex64, Complex64) -> Result<SeriesSum>,
) -> Result<PcfValue> {
    let (nu, z) = (nu.0, z.0);
    let x = z * z * 0.5;
    let coef1 = PI.sqrt() * rgamma((1.0 - nu) * 0.5);
    let coef2 = (2.0 * PI).sqrt() * rgamma(-nu * 0.5) * z;
    // e^{-x/2} M(a, b, x) = e^{x/2} M(b - a, b, -x); sum whichever side has Re ≥ 0
    let (a1, a2, arg, log_e) = if x.re >= 0.0 {
        (-nu * 0.5, (1.0 - nu) * 0.5, x, -x * 0.5)
    } else {
        ((1.0 + nu) * 0.5, 1.0 + nu * 0.5, -x, x * 0.5)
    };
    let pref = (nu * 0.5 * std::f64::consts::LN_2 + log_e).exp();
    let zero = Complex64::new(0.0, 0.0);
    let m1 = if coef1 == zero { None } else { Some(sum(a1, Complex64::new(0.5, 0.0), arg)?) };
    let m2 = if coef2 == zero { None } else { Some(sum(a2, Complex64::new(1.5, 0.0), arg)?) };
    let p1 = m1.map_or(zero, |m| coef1 * m.value);
    let p2 = m2.map_or(zero, |m| coef2 * m.value);
    let value = pref * (p1 - p2);
    let abs = pref.norm()
        * (m1.map_or(0.0, |m| coef1.norm() * m.abs_error())
            + m2.map_or(0.0, |m| coef2.norm() * m.abs_error())
            + 4.0 * f64::EPSILON * (p1.norm() + p2.norm()));
    Ok(PcfValue { value, method: PcfMethod::Series, rel_error: rel(abs, value) })
}

/// `D_ν(z)` from the large-`|z|` expansion, with the recessive companion added
/// for `|arg z| > π/2`.
pub fn pcf_d_asymptotic(nu: PcfOrder, z: PcfArgument) -> Result<PcfValue> {
    let (nu, z) = (nu.0, z.0);
    if z.norm() == 0.0 {
        return Err(Error::DomainError("asymptotic expansion needs z != 0".into()));
    }
    let z2 = z * z;
    let lnz = z.ln();
    let (s1, e1) = hyp2f0_tail(-nu * 0.5, (1.0 - nu) * 0.5, -2.0 / z2)?;
    let lead = (nu * lnz - z2 * 0.25).exp();
    let mut value = lead * s1;
    let mut abs = lead.norm() * e1;
    if z.arg().abs() > FRAC_PI_2 {
        let r = rgamma(-nu);
        if r != Complex64::new(0.0, 0.0) {
            let sign = if z.im >= 0.0 { 1.0 } else { -1.0 };
            let (s2, e2) = hyp2f0_tail((nu + 1.0) * 0.5, (nu + 2.0) * 0.5, 2.0 / z2)?;
            let phase = (Complex64::new(0.0, sign * PI) * nu).exp();
            let sub = (2.0 * PI).sqrt() * r * phase * ((-nu - 1.0) * lnz + z2 * 0.25).exp();
            value -= sub * s2;
            abs += sub.norm() * e2;
        }
    }
    abs += 4.0 * f64::EPSILON * value.norm();
    Ok(PcfValue { value, method: PcfMethod::Asymptotic, rel_error: rel(abs, value) })
}

/// Taylor coefficients `c_0..=c_order` of a solution of Weber's equation
/// `y'' = (z²/4 − ν − ½) y` about `z0` with `y(z0) = y0`, `y'(z0) = dy0`.
pub(crate) fn weber_taylor(
    nu: Complex64,
    z0: Complex64,
    y0: Complex64,
    dy0: Complex64,
    order: usize,
) -> Vec<Complex64> {
    let q0 = z0 * z0 * 0.25 - nu - 0.5;
    let q1 = z0 * 0.5;
    let q2 = 0.25;
    let mut c = vec![Complex64::new(0.0, 0.0); order + 1];
    c[0] = y0;
    if order >= 1 {
        c[1] = dy0;
    }
    for k in 0..order.saturating_sub(1) {
        let mut s = q0 * c[k];
        if k >= 1 {
            s += q1 * c[k - 1];
        }
        if k >= 2 {
            s += q2 * c[k - 2];
        }
        c[k + 2] = s / (((k + 2) * (k + 1)) as f64);
    }
    c
}

/// One Taylor step of Weber's equation; returns `(y, y')` at `z0 + h`.
fn weber_step(nu: Complex64, z0: Complex64, y: Complex64, dy: Complex64, h: Complex64) -> (Complex64, Complex64) {
    const ORDER: usize = 60;
    let c = weber_taylor(nu, z0, y, dy, ORDER);
    let mut val = Complex64::new(0.0, 0.0);
    let mut der = Complex64::new(0.0, 0.0);
    let mut hp = Complex64::new(1.0, 0.0);
    let mut quiet = 0;
    for (k, ck) in c.iter().enumerate() {
        let t = ck * hp;
        val += t;
        if k >= 1 {
            der += ck * (k as f64) * hp / h;
        }
        let scale = val.norm().max(der.norm() * h.norm());
        if k > 4 && t.norm() <= 1e-18 * scale {
            quiet += 1;
            if quiet >= 3 {
                break;
            }
        } else {
            quiet = 0;
        }
        hp *= h;
    }
    (val, der)
}

/// `D_ν(z)` by integrating Weber's equation along the ray through `z`,
/// starting from asymptotic values at radius `start`.
pub fn pcf_d_continuation(nu: PcfOrder, z: PcfArgument, start: f64) -> Result<PcfValue> {
    let (nuv, zv) = (nu.0, z.0);
    let r = zv.norm();
    let dir = if r > 0.0 { zv / r } else { Complex64::new(1.0, 0.0) };
    let z_s = dir * start.max(r);
    let zs_arg = PcfArgument(z_s);
    let d0 = pcf_d_asymptotic(nu, zs_arg)?;
    let d1 = pcf_d_asymptotic(nu.shifted(1.0), zs_arg)?;
    let mut y = d0.value;
    let mut dy = z_s * 0.5 * d0.value - d1.value;
    let span = start.max(r) - r;
    let n = (span / MAX_TAYLOR_STEP).ceil().max(0.0) as usize;
    let mut zc = z_s;
    if n > 0 {
        let h = (zv - z_s) / n as f64;
        for i in 0..n {
            let (ny, ndy) = weber_step(nuv, zc, y, dy, h);
            y = ny;
            dy = ndy;
            zc = z_s + h * (i + 1) as f64;
        }
    }
    let derr = d1.rel_error * (d1.value.norm() / d0.value.norm().max(f64::MIN_POSITIVE)).max(1.0);
    let rel_error = d0.rel_error.max(derr) + (n as f64 + 1.0) * 8.0 * f64::EPSILON;
    Ok(PcfValue { value: y, method: PcfMethod::Continuation, rel_error })
}

/// `D_ν(z)` with the evaluation route and its error estimate.
///
/// Beyond `z_switch` the asymptotic expansion is used; inside, the Kummer
/// representation. Near the positive real axis, where that representation
/// cancels beyond double-double reach, the value is continued inward from the
/// asymptotic radius instead. `AccuracyLoss` if no route reaches 1e-6.
pub fn pcf_d_detailed(nu: PcfOrder, z: PcfArgument, cfg: &PcfConfig) -> Result<PcfValue> {
    let r = z.0.norm();
    let mut best: Option<PcfValue> = None;
    let mut last_err: Option<Error> = None;
    let mut consider = |c: Result<PcfValue>, best: &mut Option<PcfValue>| match c {
        Ok(v) if v.value.re.is_finite() && v.value.im.is_finite() => {
            if best.is_none_or(|b| v.rel_error < b.rel_error) {
                *best = Some(v);
            }
        }
        Ok(_) => {}
        Err(e) => last_err = Some(e),
    };
    if r > cfg.z_switch {
        consider(pcf_d_asymptotic(nu, z), &mut best);
    }
    if best.is_none_or(|b| b.rel_error > TARGET_REL) {
        consider(pcf_d_series(nu, z), &mut best);
    }
    if best.is_none_or(|b| b.rel_error > TARGET_REL) && r <= cfg.z_switch && z.0.arg().abs() <= FRAC_PI_4 + 1e-12 {
        consider(pcf_d_continuation(nu, z, cfg.z_switch), &mut best);
    }
    match best {
        Some(v) if v.rel_error <= ACCEPT_REL => Ok(v),
        Some(v) => Err(Error::AccuracyLoss { what: "pcf_d", estimate: v.rel_error }),
        None => Err(last_err.unwrap_or(Error::NoConvergence { what: "pcf_d", budget: 0 })),
    }
}

/// Parabolic cylinder function `D_ν(z)`.
pub fn pcf_d(nu: PcfOrder, z: PcfArgument) -> Result<Complex64> {
    Ok(pcf_d_detailed(nu, z, &PcfConfig::default())?.value)
}

/// `D'_ν(z) = (z/2) D_ν(z) − D_{ν+1}(z)`.
pub fn pcf_d_deriv(nu: PcfOrder, z: PcfArgument) -> Result<Complex64> {
    let d = pcf_d(nu, z)?;
    let d1 = pcf_d(nu.shifted(1.0), z)?;
    Ok(z.0 * 0.5 * d - d1)
}
