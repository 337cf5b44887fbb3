use serde::{Deserialize, Serialize};

use super::eigen::eigenvalues_hermitian3;
use super::hamiltonian::{build_hamiltonian, LZParams};
use crate::error::Result;
use crate::propagate::TimeGrid;

/// A local minimum of the gap between instantaneous eigenvalues `pair` and
/// `pair + 1` (ascending order).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GapMinimum {
    pub pair: usize,
    pub time: f64,
    pub gap: f64,
}

/// Instantaneous eigenvalues on every grid time.
pub fn eigencurves(p: &LZParams, grid: &TimeGrid) -> Result<Vec<(f64, [f64; 3])>> {
    grid.times().into_iter().map(|t| Ok((t, eigenvalues_hermitian3(&build_hamiltonian(p, t))?))).collect()
}

/// Local minima of adjacent eigenvalue gaps, refined by a parabola through
/// the three samples around each discrete minimum, sorted by time.
pub fn gap_minima(p: &LZParams, grid: &TimeGrid) -> Result<Vec<GapMinimum>> {
    grid.validate()?;
    let curves = eigencurves(p, grid)?;
    let mut out = Vec::new();
    for pair in 0..2 {
        let gaps: Vec<f64> = curves.iter().map(|(_, e)| e[pair + 1] - e[pair]).collect();
        for i in 1..gaps.len().saturating_sub(1) {
            let (gl, g0, gr) = (gaps[i - 1], gaps[i], gaps[i + 1]);
            if !(g0 < gl && g0 <= gr) {
                continue;
            }
            let (tl, t0, tr) = (curves[i - 1].0, curves[i].0, curves[i + 1].0);
            out.push(refine(pair, (tl, gl), (t0, g0), (tr, gr)));
        }
    }
    out.sort_by(|x, y| x.time.total_cmp(&y.time).then(x.pair.cmp(&y.pair)));
    Ok(out)
}

fn refine(pair: usize, (x0, y0): (f64, f64), (x1, y1): (f64, f64), (x2, y2): (f64, f64)) -> GapMinimum {
    // vertex of the interpolating parabola
    let d1 = (y1 - y0) / (x1 - x0);
    let d2 = (y2 - y1) / (x2 - x1);
    let curv = (d2 - d1) / (x2 - x0);
    if curv <= 0.0 || !curv.is_finite() {
        return GapMinimum { pair, time: x1, gap: y1 };
    }
    let xv = 0.5 * (x0 + x1) - d1 / (2.0 * curv);
    let xv = xv.clamp(x0, x2);
    let yv = y0 + d1 * (xv - x0) + curv * (xv - x0) * (xv - x1);
    GapMinimum { pair, time: xv, gap: yv }
}
