use lz3_core::algebra::{build_hamiltonian, LZParams};
use lz3_core::propagate::{euler_maruyama, rk_adaptive, IntegratorConfig, NoiseTerm, TimeGrid};
use num_complex::Complex64;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

fn schrodinger(p: LZParams) -> impl FnMut(f64, &[Complex64], &mut [Complex64]) {
    move |t, y, dy| {
        let h = build_hamiltonian(&p, t);
        for i in 0..3 {
            dy[i] = -I * (0..3).map(|j| h.0[i][j] * y[j]).sum::<Complex64>();
        }
    }
}

fn y0() -> Vec<Complex64> {
    vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)]
}

#[test]
fn halving_tolerances_stays_within_coarse_error_estimate() {
    let p = LZParams::symmetric(-1.0, 1.0);
    let grid = TimeGrid::new(-10.0, 10.0, 1.0).unwrap();
    let coarse_cfg = IntegratorConfig::with_tolerances(1e-8, 1e-10);
    let fine_cfg = IntegratorConfig::with_tolerances(5e-9, 5e-11);
    let coarse = rk_adaptive(schrodinger(p), &y0(), &grid, &coarse_cfg).unwrap();
    let fine = rk_adaptive(schrodinger(p), &y0(), &grid, &fine_cfg).unwrap();
    let a = coarse.states.last().unwrap();
    let b = fine.states.last().unwrap();
    let diff = a.iter().zip(b).map(|(x, y)| (x - y).norm_sqr()).sum::<f64>().sqrt();
    // accumulated local estimate of the coarse run, in absolute units
    let estimate = coarse.stats.error_sum * (coarse_cfg.rtol + coarse_cfg.atol);
    assert!(diff < estimate, "diff {diff:e}, estimate {estimate:e}");
}

#[test]
fn dense_output_matches_restarted_integration() {
    let p = LZParams::new(-1.0, 1.0, 5.0);
    let cfg = IntegratorConfig::default();
    let grid = TimeGrid::new(-5.0, 5.0, 0.25).unwrap();
    let dense = rk_adaptive(schrodinger(p), &y0(), &grid, &cfg).unwrap();
    let times = grid.times();
    let mut y = y0();
    let mut worst = 0.0f64;
    for w in 1..times.len() {
        let piece = TimeGrid::new(times[w - 1], times[w], times[w] - times[w - 1]).unwrap();
        let sol = rk_adaptive(schrodinger(p), &y, &piece, &cfg).unwrap();
        y = sol.states.last().unwrap().clone();
        for (u, v) in y.iter().zip(&dense.states[w]) {
            worst = worst.max((u - v).norm());
        }
    }
    assert!(worst <= 10.0 * cfg.rtol, "{worst:e}");
}

#[test]
fn euler_maruyama_weak_variance() {
    // dy = dW: Var y(T) = T
    let grid = TimeGrid::new(0.0, 1.0, 1.0).unwrap();
    let n = 10_000;
    let mut s = 0.0;
    let mut s2 = 0.0;
    for seed in 0..n {
        let noise = vec![NoiseTerm {
            g: Box::new(|_, _, g: &mut [Complex64]| g[0] = Complex64::new(1.0, 0.0)),
            volatility: 1.0,
        }];
        let sol = euler_maruyama(
            |_, _, d: &mut [Complex64]| d[0] = Complex64::new(0.0, 0.0),
            &noise,
            &[Complex64::new(0.0, 0.0)],
            &grid,
            0.01,
            seed,
        )
        .unwrap();
        let x = sol[1][0].re;
        s += x;
        s2 += x * x;
    }
    let mean = s / n as f64;
    let var = s2 / n as f64 - mean * mean;
    assert!((var - 1.0).abs() < 0.05, "{var}");
}
