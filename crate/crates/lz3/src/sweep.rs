//! Parameter sweeps over `a`, `Δ`, `Ω` and an isotropic `ξ₀`.

use lz3_core::algebra::LZParams;
use lz3_core::closed::{evolve_state, Record};
use lz3_core::open::{evolve_density, DensityMatrix3, NoiseSpec};
use lz3_core::propagate::{IntegratorConfig, TimeGrid};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::{default_grid, InitialState};
use crate::csv::fmt_g12;
use crate::error::{CliError, CliResult};

pub const MAX_SWEEP_POINTS: usize = 100_000;
pub const SWEEP_HEADER: &str = "a,delta,omega,xi,P1,P2,P3,trace,purity,error";

/// Cartesian sweep. `omega` absent ties `Ω = Δ`; `xi` absent means no noise.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub a: Vec<f64>,
    pub delta: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub xi: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pulse_sigma: Option<f64>,
    #[serde(default = "default_grid")]
    pub grid: TimeGrid,
    #[serde(default)]
    pub integrator: IntegratorConfig,
    #[serde(default)]
    pub initial_state: InitialState,
}

/// One parameter tuple `(a, Δ, Ω, ξ₀)`; `ξ₀ = None` is a closed run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepPoint {
    pub a: f64,
    pub delta: f64,
    pub omega: f64,
    pub xi: Option<f64>,
}

impl SweepConfig {
    pub fn parse(text: &str) -> CliResult<Self> {
        let cfg: Self = serde_json::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &std::path::Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::parse(&text)
    }

    pub fn validate(&self) -> CliResult<()> {
        let lists = [Some(&self.a), Some(&self.delta), self.omega.as_ref(), self.xi.as_ref()];
        for v in lists.into_iter().flatten() {
            if v.iter().any(|x| !x.is_finite()) {
                return Err(CliError::Config("sweep ranges must be finite".into()));
            }
        }
        if self.xi.as_ref().is_some_and(|v| v.iter().any(|x| *x < 0.0)) {
            return Err(CliError::Config("sweep xi values must be non-negative".into()));
        }
        let count = [
            self.a.len(),
            self.delta.len(),
            self.omega.as_ref().map_or(1, Vec::len),
            self.xi.as_ref().map_or(1, Vec::len),
        ]
        .iter()
        .try_fold(1usize, |acc, n| acc.checked_mul(*n))
        .unwrap_or(usize::MAX);
        if count > MAX_SWEEP_POINTS {
            return Err(CliError::Config(format!("sweep has {count} points, limit is {MAX_SWEEP_POINTS}")));
        }
        self.grid.validate().map_err(CliError::config)?;
        self.integrator.validate().map_err(CliError::config)?;
        self.initial_state.amplitudes(3)?;
        Ok(())
    }

    /// All parameter tuples in lexicographic order of `(a, Δ, Ω, ξ₀)`.
    pub fn points(&self) -> Vec<SweepPoint> {
        let sorted = |v: &[f64]| {
            let mut v = v.to_vec();
            v.sort_by(f64::total_cmp);
            v
        };
        let mut out = Vec::new();
        let xis: Vec<Option<f64>> = match &self.xi {
            Some(v) => sorted(v).into_iter().map(Some).collect(),
            None => vec![None],
        };
        for a in sorted(&self.a) {
            for delta in sorted(&self.delta) {
                let omegas = match &self.omega {
                    Some(v) => sorted(v),
                    None => vec![delta],
                };
                for &omega in &omegas {
                    for &xi in &xis {
                        out.push(SweepPoint { a, delta, omega, xi });
                    }
                }
            }
        }
        out
    }

    fn run_point(&self, pt: &SweepPoint) -> CliResult<Record> {
        let p = LZParams { a: pt.a, delta: pt.delta, omega: pt.omega, pulse_sigma: self.pulse_sigma };
        p.validate()?;
        let psi0 = self.initial_state.state3()?;
        let rec = match pt.xi {
            Some(xi) if xi > 0.0 => {
                let run = evolve_density(
                    &p,
                    &NoiseSpec::isotropic(xi),
                    &DensityMatrix3::pure(&psi0),
                    &self.grid,
                    &self.integrator,
                )?;
                run.trajectory.records.last().cloned()
            }
            _ => evolve_state(&p, &psi0, &self.grid, &self.integrator)?.records.last().cloned(),
        };
        rec.ok_or_else(|| CliError::Config("empty grid".into()))
    }

    /// Final-time populations and purity per point; failures land in `error`.
    pub fn run_csv(&self) -> String {
        let points = self.points();
        let results: Vec<CliResult<Record>> = points.par_iter().map(|pt| self.run_point(pt)).collect();
        let mut out = String::from(SWEEP_HEADER);
        out.push('\n');
        for (pt, res) in points.iter().zip(results) {
            let xi = pt.xi.unwrap_or(0.0);
            let mut fields: Vec<String> = [pt.a, pt.delta, pt.omega, xi].into_iter().map(fmt_g12).collect();
            match res {
                Ok(r) => {
                    fields
                        .extend([r.populations[0], r.populations[1], r.populations[2], r.trace, r.purity].map(fmt_g12));
                    fields.push(String::new());
                }
                Err(e) => {
                    fields.extend(std::iter::repeat_n("nan".to_string(), 5));
                    let name = match &e {
                        CliError::Numeric(core) => core.name().to_string(),
                        other => other.to_string(),
                    };
                    fields.push(name.replace([',', '\n'], ";"));
                }
            }
            out.push_str(&fields.join(","));
            out.push('\n');
        }
        out
    }
}
