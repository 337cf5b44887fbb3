//! The subcommands, as functions from configuration to output text.

use lz3_core::closed::{analytic_state, evolve_state, fit_constants_to_state, two_level_evolve, Trajectory};
use lz3_core::open::{
    evolve_density, langevin_ensemble, liouvillian_matrix, liouvillian_spectrum, steady_state, DensityMatrix3,
    PositivityLoss,
};
use lz3_core::specfun::{pcf_d_detailed, PcfArgument, PcfConfig, PcfOrder};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::config::{OutputFormat, ScenarioConfig};
use crate::csv::{fmt_g12, trajectory_csv};
use crate::error::{CliError, CliResult};
use crate::spectrum::SpectrumDoc;

fn json_compact<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("value serializes")
}

fn scenario_comments(cfg: &ScenarioConfig, command: &str) -> Vec<(String, String)> {
    let mut c =
        vec![("command".to_string(), command.to_string()), ("hamiltonian".to_string(), json_compact(&cfg.hamiltonian))];
    if let Some(n) = &cfg.noise {
        c.push(("noise".into(), json_compact(n)));
    }
    c.push(("grid".into(), json_compact(&cfg.grid)));
    c.push(("integrator".into(), json_compact(&cfg.integrator)));
    c.push(("initial_state".into(), json_compact(&cfg.initial_state)));
    c
}

/// Trajectory of a scenario plus any positivity diagnostics.
pub fn run_scenario(cfg: &ScenarioConfig) -> CliResult<(Trajectory, Vec<PositivityLoss>)> {
    if let Some(p) = cfg.hamiltonian.two_level() {
        let v = cfg.initial_state.amplitudes(2)?;
        return Ok((two_level_evolve(&p, [v[0], v[1]], &cfg.grid, &cfg.integrator)?, Vec::new()));
    }
    let h = cfg.hamiltonian.three_level().expect("three-level hamiltonian");
    let psi0 = cfg.initial_state.state3()?;
    match &cfg.noise {
        Some(n) if !n.is_zero() => {
            let run = evolve_density(h.as_ref(), n, &DensityMatrix3::pure(&psi0), &cfg.grid, &cfg.integrator)?;
            Ok((run.trajectory, run.warnings))
        }
        _ => Ok((evolve_state(h.as_ref(), &psi0, &cfg.grid, &cfg.integrator)?, Vec::new())),
    }
}

#[derive(Serialize)]
struct SimulationDoc<'a> {
    config: &'a ScenarioConfig,
    trajectory: &'a Trajectory,
    positivity_warnings: &'a [PositivityLoss],
}

/// `lz3 simulate`: CSV or JSON per `cfg.output.format`.
pub fn simulate(cfg: &ScenarioConfig) -> CliResult<String> {
    let (traj, warnings) = run_scenario(cfg)?;
    Ok(match cfg.output.format {
        OutputFormat::Csv => {
            let mut c = scenario_comments(cfg, "simulate");
            for w in &warnings {
                c.push((
                    "positivity_warning".into(),
                    format!("t {} min_eigenvalue {}", fmt_g12(w.t), fmt_g12(w.min_eigenvalue)),
                ));
            }
            trajectory_csv(&c, &traj, &[], |_| Vec::new())
        }
        OutputFormat::Json => {
            let doc = SimulationDoc { config: cfg, trajectory: &traj, positivity_warnings: &warnings };
            serde_json::to_string_pretty(&doc).expect("trajectory serializes")
        }
    })
}

/// Result of `lz3 compare-analytic`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CompareReport {
    pub a: f64,
    pub delta: f64,
    pub t0: f64,
    pub t1: f64,
    pub points: usize,
    pub fit_condition: f64,
    pub max_deviation: f64,
    pub rms_deviation: f64,
    pub bound: f64,
    pub passed: bool,
}

/// Analytic su(2) state against direct integration over `cfg.compare.grid`.
pub fn compare_analytic(cfg: &ScenarioConfig) -> CliResult<CompareReport> {
    let p = cfg.hamiltonian.lz().ok_or_else(|| {
        lz3_core::Error::DomainError("the analytic solution needs an `lz` Hamiltonian with omega = delta".into())
    })?;
    let grid = cfg.compare.grid;
    let psi0 = cfg.initial_state.state3()?;
    let (c, diag) = fit_constants_to_state(&p, grid.t0, &psi0)?;
    let num = evolve_state(&p, &psi0, &grid, &cfg.integrator)?;
    let mut max: f64 = 0.0;
    let mut sq = 0.0;
    let mut count = 0usize;
    for (t, r) in num.times.iter().zip(&num.records) {
        let an = analytic_state(&p, &c, *t)?;
        let s = r.state.expect("pure-state record");
        for k in 0..3 {
            let d = (an.0[k] - s[k]).norm();
            max = max.max(d);
            sq += d * d;
            count += 1;
        }
    }
    let bound = cfg.compare.bound;
    Ok(CompareReport {
        a: p.a,
        delta: p.delta,
        t0: grid.t0,
        t1: grid.t1,
        points: num.times.len(),
        fit_condition: diag.condition,
        max_deviation: max,
        rms_deviation: (sq / count as f64).sqrt(),
        bound,
        passed: max <= bound,
    })
}

/// `lz3 liouvillian`: spectrum of the Liouvillian frozen at `t`.
pub fn liouvillian(cfg: &ScenarioConfig, t: f64) -> CliResult<SpectrumDoc> {
    if !t.is_finite() {
        return Err(CliError::Config(format!("freeze time must be finite, got {t}")));
    }
    let h3 = cfg
        .hamiltonian
        .three_level()
        .ok_or_else(|| CliError::Config("the Liouvillian needs a three-level Hamiltonian".into()))?;
    let h = h3.at(t);
    let n = cfg.noise_or_none();
    let rho0 = DensityMatrix3::pure(&cfg.initial_state.state3()?);
    let l = liouvillian_matrix(&h, &n)?;
    let spec = liouvillian_spectrum(&l, Some(&rho0))?;
    let steady = steady_state(&l).map(|r| r.0).map_err(|e| e.name().to_string());
    Ok(SpectrumDoc::from_decomposition(t, n, h, rho0.0, &spec, steady))
}

/// `lz3 langevin`: ensemble-averaged populations with standard errors.
pub fn langevin(cfg: &ScenarioConfig, trajectories: usize, seed: u64) -> CliResult<String> {
    let h = cfg
        .hamiltonian
        .three_level()
        .ok_or_else(|| CliError::Config("Langevin trajectories need a three-level Hamiltonian".into()))?;
    let n = cfg.noise_or_none();
    let psi0 = cfg.initial_state.state3()?;
    let dt = cfg.langevin.dt;
    let ens = langevin_ensemble(h.as_ref(), &n, &psi0, &cfg.grid, dt, seed, trajectories)?;
    let mut c = scenario_comments(cfg, "langevin");
    c.push(("noise_used".into(), json_compact(&n)));
    c.push(("trajectories".into(), trajectories.to_string()));
    c.push(("seed".into(), seed.to_string()));
    c.push(("sde_dt".into(), fmt_g12(dt)));
    Ok(trajectory_csv(&c, &ens.trajectory, &["se1", "se2", "se3"], |i| ens.std_errors[i].to_vec()))
}

/// `lz3 specfun-eval`: one line `re,im,method,rel_error`.
pub fn specfun_eval(nu: Complex64, z: Complex64) -> CliResult<String> {
    let v = pcf_d_detailed(PcfOrder::new(nu)?, PcfArgument::new(z)?, &PcfConfig::default())?;
    Ok(format!("{},{},{:?},{}\n", fmt_g12(v.value.re), fmt_g12(v.value.im), v.method, fmt_g12(v.rel_error)))
}
