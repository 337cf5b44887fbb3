use num_complex::Complex64;
use rayon::prelude::*;

use super::density::{zero3, NoiseSpec};
use crate::algebra::{spin1_matrices, ComplexMatrix3, Hamiltonian3, Vector3};
use crate::closed::{Record, StateVector3, Trajectory};
use crate::error::{Error, Result};
use crate::propagate::{check_dt, substeps, NormalStream, TimeGrid};

const I: Complex64 = Complex64::new(0.0, 1.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Paths evaluated per parallel batch before their sequential reduction.
const BATCH: usize = 64;

/// `exp(−i H dt) ψ` by Taylor series of the action on `ψ`.
fn unitary_step(h: &ComplexMatrix3, psi: &Vector3, dt: f64) -> Vector3 {
    let mut out = *psi;
    let mut term = *psi;
    for k in 1..60 {
        let ht = h.mul_vec(&term);
        let f = -I * (dt / k as f64);
        term = [ht[0] * f, ht[1] * f, ht[2] * f];
        out = [out[0] + term[0], out[1] + term[1], out[2] + term[2]];
        let size: f64 = term.iter().map(|c| c.norm_sqr()).sum();
        if size < 1e-36 {
            break;
        }
    }
    out
}

/// Walks one path, calling `visit(i, ψ)` at every grid time.
fn walk<H: Hamiltonian3 + ?Sized>(
    h: &H,
    n: &NoiseSpec,
    psi0: &Vector3,
    grid: &TimeGrid,
    dt: f64,
    seed: u64,
    mut visit: impl FnMut(usize, &Vector3),
) -> Result<()> {
    let times = grid.times();
    let (sx, sy, sz) = spin1_matrices();
    let channels: Vec<(ComplexMatrix3, ComplexMatrix3, f64, NormalStream)> = [sx, sy, sz]
        .into_iter()
        .zip(n.xi)
        .enumerate()
        .filter(|(_, (_, xi))| *xi > 0.0)
        .map(|(j, (s, xi))| (s, s * s, xi, NormalStream::new(seed, j as u64)))
        .collect();
    let mut channels = channels;
    let mut psi = *psi0;
    visit(0, &psi);
    for w in 1..times.len() {
        let (m, step) = substeps(times[w] - times[w - 1], dt);
        let sq = step.sqrt();
        for s in 0..m {
            let t = times[w - 1] + s as f64 * step;
            psi = unitary_step(&h.at(t + 0.5 * step), &psi, step);
            let mut inc = [ZERO; 3];
            for (op, op2, xi, stream) in channels.iter_mut() {
                let dw = sq * stream.next_normal();
                let a = op.mul_vec(&psi);
                let b = op2.mul_vec(&psi);
                let drift = -0.5 * *xi * *xi * step;
                let kick = -I * (*xi * dw);
                for k in 0..3 {
                    inc[k] += b[k] * drift + a[k] * kick;
                }
            }
            for k in 0..3 {
                psi[k] += inc[k];
            }
        }
        if !psi.iter().all(|c| c.re.is_finite() && c.im.is_finite()) {
            return Err(Error::NonFiniteState { t: times[w] });
        }
        visit(w, &psi);
    }
    Ok(())
}

/// One stochastic pure-state path of the Schrödinger–Langevin equation.
///
/// Each substep applies `exp(−i H(t_mid) δt)` and then the Itô increment
/// `Σⱼ (−½ξ₀ⱼ² Sⱼ² δt − i ξ₀ⱼ Sⱼ ΔWⱼ) ψ`. Channel `j` draws from
/// `NormalStream::new(seed, j)`. The state is never renormalized.
pub fn langevin_trajectory<H: Hamiltonian3 + ?Sized>(
    h: &H,
    n: &NoiseSpec,
    psi0: &StateVector3,
    grid: &TimeGrid,
    dt: f64,
    seed: u64,
) -> Result<Trajectory> {
    n.validate()?;
    grid.validate()?;
    check_dt(dt, grid)?;
    let mut records = Vec::with_capacity(grid.intervals() + 1);
    walk(h, n, &psi0.0, grid, dt, seed, |_, psi| records.push(Record::from_state(psi)))?;
    Ok(Trajectory { times: grid.times(), records })
}

/// Ensemble mean density matrix with per-population standard errors.
#[derive(Debug, Clone, PartialEq)]
pub struct EnsembleAverage {
    pub trajectory: Trajectory,
    pub std_errors: Vec<[f64; 3]>,
    pub paths: usize,
}

#[derive(Default)]
struct Accumulator {
    rho: Vec<ComplexMatrix3>,
    p2: Vec<[f64; 3]>,
    count: usize,
}

impl Accumulator {
    fn new(len: usize) -> Self {
        Self { rho: vec![zero3(); len], p2: vec![[0.0; 3]; len], count: 0 }
    }

    fn add(&mut self, path: &[Vector3]) {
        for (i, psi) in path.iter().enumerate() {
            let proj = ComplexMatrix3::from_fn(|a, b| psi[a] * psi[b].conj());
            self.rho[i] += proj;
            for k in 0..3 {
                self.p2[i][k] += psi[k].norm_sqr().powi(2);
            }
        }
        self.count += 1;
    }

    fn finish(self, times: Vec<f64>) -> EnsembleAverage {
        let n = self.count as f64;
        let mut records = Vec::with_capacity(times.len());
        let mut std_errors = Vec::with_capacity(times.len());
        for (sum, sq) in self.rho.iter().zip(&self.p2) {
            let mean = sum.scale_re(1.0 / n);
            let rec = Record::from_density(&mean);
            let mut se = [0.0; 3];
            for k in 0..3 {
                let m = rec.populations[k];
                let var = ((sq[k] - n * m * m) / (n - 1.0)).max(0.0);
                se[k] = (var / n).sqrt();
            }
            records.push(rec);
            std_errors.push(se);
        }
        EnsembleAverage { trajectory: Trajectory { times, records }, std_errors, paths: self.count }
    }
}

/// Averages `|ψ⟩⟨ψ|` over pure-state paths sharing one grid.
pub fn ensemble_average(paths: &[Trajectory]) -> Result<EnsembleAverage> {
    if paths.len() < 2 {
        return Err(Error::InvalidParameter(format!("ensemble needs at least 2 paths, got {}", paths.len())));
    }
    let times = &paths[0].times;
    let mut acc = Accumulator::new(times.len());
    let mut states = Vec::with_capacity(times.len());
    for p in paths {
        if p.times != *times || p.records.len() != times.len() {
            return Err(Error::GridMismatch);
        }
        states.clear();
        for r in &p.records {
            states.push(r.state.ok_or_else(|| Error::DomainError("ensemble paths must carry pure states".into()))?);
        }
        acc.add(&states);
    }
    Ok(acc.finish(times.clone()))
}

/// Runs `count` paths with seeds `seed, seed + 1, …` and averages them.
///
/// Paths are computed in parallel batches; the reduction always adds them
/// in seed order, so the result does not depend on the thread count.
pub fn langevin_ensemble<H: Hamiltonian3 + ?Sized>(
    h: &H,
    n: &NoiseSpec,
    psi0: &StateVector3,
    grid: &TimeGrid,
    dt: f64,
    seed: u64,
    count: usize,
) -> Result<EnsembleAverage> {
    n.validate()?;
    grid.validate()?;
    check_dt(dt, grid)?;
    if count < 2 {
        return Err(Error::InvalidParameter(format!("ensemble needs at least 2 paths, got {count}")));
    }
    let len = grid.intervals() + 1;
    let mut acc = Accumulator::new(len);
    let mut start = 0;
    while start < count {
        let end = (start + BATCH).min(count);
        let batch: Vec<Result<Vec<Vector3>>> = (start..end)
            .into_par_iter()
            .map(|i| {
                let mut path = Vec::with_capacity(len);
                walk(h, n, &psi0.0, grid, dt, seed.wrapping_add(i as u64), |_, psi| path.push(*psi))?;
                Ok(path)
            })
            .collect();
        for path in batch {
            acc.add(&path?);
        }
        start = end;
    }
    Ok(acc.finish(grid.times()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::LZParams;

    #[test]
    fn taylor_step_is_unitary() {
        let h = ComplexMatrix3::from_real([[3.0, 2.0, 0.0], [2.0, 0.0, 2.0], [0.0, 2.0, -3.0]]);
        let psi = [Complex64::new(0.6, 0.0), Complex64::new(0.0, 0.8), ZERO];
        let out = unitary_step(&h, &psi, 0.05);
        let n: f64 = out.iter().map(|c| c.norm_sqr()).sum();
        assert!((n - 1.0).abs() < 1e-14);
    }

    #[test]
    fn seeded_paths_repeat_bitwise() {
        let p = LZParams::symmetric(1.0, 2.0);
        let grid = TimeGrid::new(-2.0, 2.0, 0.5).unwrap();
        let psi0 = StateVector3::basis(0).unwrap();
        let a = langevin_trajectory(&p, &NoiseSpec::default(), &psi0, &grid, 0.01, 7).unwrap();
        let b = langevin_trajectory(&p, &NoiseSpec::default(), &psi0, &grid, 0.01, 7).unwrap();
        let c = langevin_trajectory(&p, &NoiseSpec::default(), &psi0, &grid, 0.01, 8).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn ensemble_of_identical_paths() {
        let p = LZParams::symmetric(1.0, 2.0);
        let grid = TimeGrid::new(0.0, 1.0, 0.5).unwrap();
        let psi0 = StateVector3::basis(0).unwrap();
        let path = langevin_trajectory(&p, &NoiseSpec::none(), &psi0, &grid, 0.01, 0).unwrap();
        let avg = ensemble_average(&[path.clone(), path.clone()]).unwrap();
        for (r, q) in avg.trajectory.records.iter().zip(&path.records) {
            for k in 0..3 {
                assert!((r.populations[k] - q.populations[k]).abs() < 1e-15);
            }
        }
        assert!(avg.std_errors.iter().flatten().all(|s| *s < 1e-7));
    }

    #[test]
    fn orthogonal_pair_is_half_mixed() {
        let grid = TimeGrid::new(0.0, 1.0, 1.0).unwrap();
        let zero = ComplexMatrix3::diag([0.0; 3]);
        let a =
            langevin_trajectory(&zero, &NoiseSpec::none(), &StateVector3::basis(0).unwrap(), &grid, 0.5, 0).unwrap();
        let b =
            langevin_trajectory(&zero, &NoiseSpec::none(), &StateVector3::basis(1).unwrap(), &grid, 0.5, 0).unwrap();
        let avg = ensemble_average(&[a, b]).unwrap();
        let r = &avg.trajectory.records[1];
        assert_eq!(r.populations, [0.5, 0.5, 0.0]);
        assert!((r.purity - 0.5).abs() < 1e-15);
    }

    #[test]
    fn mismatched_grids() {
        let zero = ComplexMatrix3::diag([0.0; 3]);
        let e = StateVector3::basis(0).unwrap();
        let a =
            langevin_trajectory(&zero, &NoiseSpec::none(), &e, &TimeGrid::new(0.0, 1.0, 0.5).unwrap(), 0.5, 0).unwrap();
        let b =
            langevin_trajectory(&zero, &NoiseSpec::none(), &e, &TimeGrid::new(0.0, 2.0, 0.5).unwrap(), 0.5, 0).unwrap();
        assert_eq!(ensemble_average(&[a, b]), Err(Error::GridMismatch));
    }
}
