//! Euler–Maruyama with counter-addressable Gaussian increments.

use num_complex::Complex64;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::grid::TimeGrid;
use crate::error::{Error, Result};

/// Standard normal draws for one noise channel, addressable by step index.
///
/// Draw `n` of channel `j` under `seed` depends only on `(seed, j, n)`.
#[derive(Debug, Clone)]
pub struct NormalStream {
    rng: ChaCha8Rng,
}

impl NormalStream {
    pub fn new(seed: u64, channel: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(channel);
        Self { rng }
    }

    /// Repositions so the next draw is draw number `n`.
    pub fn seek(&mut self, n: u64) {
        // each draw consumes two u64, i.e. four 32-bit words
        self.rng.set_word_pos(4 * n as u128);
    }

    fn uniform(&mut self) -> f64 {
        (self.rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Box–Muller; always consumes exactly two `u64`.
    pub fn next_normal(&mut self) -> f64 {
        let u1 = 1.0 - self.uniform();
        let u2 = self.uniform();
        (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
    }
}

/// One multiplicative noise channel: `volatility · g(t, y)` multiplies `dW`.
pub struct NoiseTerm<'a> {
    pub g: Box<dyn Fn(f64, &[Complex64], &mut [Complex64]) + Send + Sync + 'a>,
    pub volatility: f64,
}

/// Substep count and length for an output interval of length `span`.
pub(crate) fn substeps(span: f64, dt: f64) -> (usize, f64) {
    let m = (span / dt - 1e-9).ceil().max(1.0) as usize;
    (m, span / m as f64)
}

pub(crate) fn check_dt(dt: f64, grid: &TimeGrid) -> Result<()> {
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(Error::InvalidParameter(format!("SDE step must be positive, got {dt}")));
    }
    if dt > grid.dt_out * (1.0 + 1e-12) {
        return Err(Error::InvalidParameter(format!("SDE step {dt} exceeds output spacing {}", grid.dt_out)));
    }
    Ok(())
}

/// Euler–Maruyama sample path at the grid times.
///
/// Each output interval is split into equal substeps no longer than `dt`;
/// increment `n` of channel `j` comes from `NormalStream::new(seed, j)`.
pub fn euler_maruyama<D>(
    drift: D,
    noise: &[NoiseTerm<'_>],
    y0: &[Complex64],
    grid: &TimeGrid,
    dt: f64,
    seed: u64,
) -> Result<Vec<Vec<Complex64>>>
where
    D: Fn(f64, &[Complex64], &mut [Complex64]),
{
    grid.validate()?;
    check_dt(dt, grid)?;
    let n = y0.len();
    let zero = Complex64::new(0.0, 0.0);
    let mut streams: Vec<NormalStream> = (0..noise.len()).map(|j| NormalStream::new(seed, j as u64)).collect();
    let times = grid.times();
    let mut y = y0.to_vec();
    let mut f = vec![zero; n];
    let mut g = vec![zero; n];
    let mut dy = vec![zero; n];
    let mut out = Vec::with_capacity(times.len());
    out.push(y.clone());
    for w in times.windows(2) {
        let (m, h) = substeps(w[1] - w[0], dt);
        let sq = h.sqrt();
        for s in 0..m {
            let t = w[0] + s as f64 * h;
            drift(t, &y, &mut f);
            for i in 0..n {
                dy[i] = f[i] * h;
            }
            for (term, stream) in noise.iter().zip(streams.iter_mut()) {
                let dw = stream.next_normal() * sq;
                (term.g)(t, &y, &mut g);
                for i in 0..n {
                    dy[i] += g[i] * (term.volatility * dw);
                }
            }
            for i in 0..n {
                y[i] += dy[i];
            }
            if !y.iter().all(|c| c.re.is_finite() && c.im.is_finite()) {
                return Err(Error::NonFiniteState { t: t + h });
            }
        }
        out.push(y.clone());
    }
    Ok(out)
}
