//! Strict JSON scenario configuration.

use std::path::PathBuf;

use lz3_core::algebra::{Hamiltonian3, LZParams, SU3Params};
use lz3_core::closed::{StateVector3, TwoLevelParams, NORM_TOL};
use lz3_core::open::NoiseSpec;
use lz3_core::propagate::{IntegratorConfig, TimeGrid};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

pub fn default_grid() -> TimeGrid {
    TimeGrid { t0: -20.0, t1: 20.0, dt_out: 0.01 }
}

pub fn default_compare_grid() -> TimeGrid {
    TimeGrid { t0: -8.0, t1: 8.0, dt_out: 0.01 }
}

/// Which Hamiltonian drives the run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum HamiltonianSpec {
    /// Three-level sweep with couplings `Δ` and `Ω`.
    Lz {
        a: f64,
        delta: f64,
        omega: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        pulse_sigma: Option<f64>,
    },
    /// `a·t·diag(1, 0, −1) + Σ c_k λ_k` over the off-diagonal Gell-Mann matrices.
    Su3 { a: f64, coeffs: [f64; 6] },
    /// The 2×2 reference sweep.
    TwoLevel {
        a: f64,
        delta: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        pulse_sigma: Option<f64>,
    },
}

impl HamiltonianSpec {
    pub fn lz(&self) -> Option<LZParams> {
        match *self {
            HamiltonianSpec::Lz { a, delta, omega, pulse_sigma } => Some(LZParams { a, delta, omega, pulse_sigma }),
            _ => None,
        }
    }

    pub fn two_level(&self) -> Option<TwoLevelParams> {
        match *self {
            HamiltonianSpec::TwoLevel { a, delta, pulse_sigma } => Some(TwoLevelParams { a, delta, pulse_sigma }),
            _ => None,
        }
    }

    /// Three-level Hamiltonian, `None` for the two-level reference.
    pub fn three_level(&self) -> Option<Box<dyn Hamiltonian3>> {
        match *self {
            HamiltonianSpec::Lz { .. } => self.lz().map(|p| Box::new(p) as Box<dyn Hamiltonian3>),
            HamiltonianSpec::Su3 { a, coeffs } => Some(Box::new(SU3Params { a, coeffs })),
            HamiltonianSpec::TwoLevel { .. } => None,
        }
    }

    pub fn dimension(&self) -> usize {
        match self {
            HamiltonianSpec::TwoLevel { .. } => 2,
            _ => 3,
        }
    }

    fn validate(&self) -> CliResult<()> {
        match *self {
            HamiltonianSpec::Lz { .. } => self.lz().map_or(Ok(()), |p| p.validate()),
            HamiltonianSpec::Su3 { a, coeffs } => SU3Params { a, coeffs }.validate(),
            HamiltonianSpec::TwoLevel { .. } => self.two_level().map_or(Ok(()), |p| p.validate()),
        }
        .map_err(CliError::config)
    }
}

/// Initial state: a basis index or explicit amplitudes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum InitialState {
    Basis(usize),
    Amplitudes(Vec<Complex64>),
}

impl Default for InitialState {
    fn default() -> Self {
        InitialState::Basis(0)
    }
}

impl InitialState {
    /// Amplitudes for a `dim`-level system, checked for length and norm.
    pub fn amplitudes(&self, dim: usize) -> CliResult<Vec<Complex64>> {
        let amps = match self {
            InitialState::Basis(k) => {
                if *k >= dim {
                    return Err(CliError::Config(format!("initial_state.basis = {k} out of range for {dim} levels")));
                }
                let mut v = vec![Complex64::new(0.0, 0.0); dim];
                v[*k] = Complex64::new(1.0, 0.0);
                v
            }
            InitialState::Amplitudes(v) => v.clone(),
        };
        if amps.len() != dim {
            return Err(CliError::Config(format!("initial_state has {} amplitudes, expected {dim}", amps.len())));
        }
        let n: f64 = amps.iter().map(|c| c.norm_sqr()).sum();
        if !n.is_finite() || (n - 1.0).abs() > NORM_TOL {
            return Err(CliError::Config(format!("initial_state is not normalized (|psi|^2 = {n})")));
        }
        Ok(amps)
    }

    pub fn state3(&self) -> CliResult<StateVector3> {
        let v = self.amplitudes(3)?;
        StateVector3::new([v[0], v[1], v[2]]).map_err(CliError::config)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    /// Destination file; standard output when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<PathBuf>,
    #[serde(default)]
    pub format: OutputFormat,
}

/// Settings for `compare-analytic`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CompareSpec {
    #[serde(default = "default_bound")]
    pub bound: f64,
    /// Comparison window; the analytic constants are fitted at `grid.t0`.
    #[serde(default = "default_compare_grid")]
    pub grid: TimeGrid,
}

fn default_bound() -> f64 {
    1e-6
}

impl Default for CompareSpec {
    fn default() -> Self {
        Self { bound: default_bound(), grid: default_compare_grid() }
    }
}

/// Settings for `langevin`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LangevinSpec {
    /// Stochastic substep.
    #[serde(default = "default_sde_dt")]
    pub dt: f64,
    #[serde(default = "default_trajectories")]
    pub trajectories: usize,
    #[serde(default)]
    pub seed: u64,
}

fn default_sde_dt() -> f64 {
    1e-3
}

fn default_trajectories() -> usize {
    2000
}

impl Default for LangevinSpec {
    fn default() -> Self {
        Self { dt: default_sde_dt(), trajectories: default_trajectories(), seed: 0 }
    }
}

/// One simulation scenario.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub hamiltonian: HamiltonianSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub noise: Option<NoiseSpec>,
    #[serde(default = "default_grid")]
    pub grid: TimeGrid,
    #[serde(default)]
    pub integrator: IntegratorConfig,
    #[serde(default)]
    pub initial_state: InitialState,
    #[serde(default)]
    pub output: OutputSpec,
    #[serde(default)]
    pub compare: CompareSpec,
    #[serde(default)]
    pub langevin: LangevinSpec,
}

impl ScenarioConfig {
    pub fn new(hamiltonian: HamiltonianSpec) -> Self {
        Self {
            hamiltonian,
            noise: None,
            grid: default_grid(),
            integrator: IntegratorConfig::default(),
            initial_state: InitialState::default(),
            output: OutputSpec::default(),
            compare: CompareSpec::default(),
            langevin: LangevinSpec::default(),
        }
    }

    /// Parses and validates; unknown keys are errors.
    pub fn parse(text: &str) -> CliResult<Self> {
        let cfg: Self = serde_json::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &std::path::Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::parse(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scenario config serializes")
    }

    pub fn validate(&self) -> CliResult<()> {
        self.hamiltonian.validate()?;
        self.grid.validate().map_err(CliError::config)?;
        self.integrator.validate().map_err(CliError::config)?;
        self.initial_state.amplitudes(self.hamiltonian.dimension())?;
        if let Some(n) = &self.noise {
            n.validate().map_err(CliError::config)?;
            if self.hamiltonian.dimension() == 2 && !n.is_zero() {
                return Err(CliError::Config("noise is only supported for three-level Hamiltonians".into()));
            }
        }
        if !(self.compare.bound > 0.0 && self.compare.bound.is_finite()) {
            return Err(CliError::Config(format!("compare.bound must be positive, got {}", self.compare.bound)));
        }
        self.compare.grid.validate().map_err(CliError::config)?;
        let l = &self.langevin;
        if !(l.dt > 0.0 && l.dt.is_finite()) {
            return Err(CliError::Config(format!("langevin.dt must be positive, got {}", l.dt)));
        }
        if l.trajectories < 2 {
            return Err(CliError::Config(format!("langevin.trajectories must be at least 2, got {}", l.trajectories)));
        }
        Ok(())
    }

    /// Noise channels, treating an absent block as noiseless.
    pub fn noise_or_none(&self) -> NoiseSpec {
        self.noise.unwrap_or_else(NoiseSpec::none)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const FIG1B: &str = r#"{
        "hamiltonian": {"kind": "lz", "a": -1.0, "delta": 1.0, "omega": 1.0},
        "initial_state": {"basis": 0}
    }"#;

    #[test]
    fn minimal_config_takes_defaults() {
        let c = ScenarioConfig::parse(FIG1B).unwrap();
        assert_eq!(c.grid, default_grid());
        assert_eq!(c.integrator, IntegratorConfig::default());
        assert_eq!(c.noise, None);
    }

    #[test]
    fn unknown_key_is_named() {
        let bad = FIG1B.replace("\"omega\"", "\"omga\"");
        let err = ScenarioConfig::parse(&bad).unwrap_err();
        assert!(matches!(err, CliError::Parse { .. }));
        assert!(err.to_string().contains("omga"), "{err}");
    }

    #[test]
    fn unknown_top_level_key() {
        let bad = FIG1B.replace("\"initial_state\"", "\"inital_state\"");
        assert!(ScenarioConfig::parse(&bad).unwrap_err().to_string().contains("inital_state"));
    }

    #[test]
    fn round_trip() {
        let c = ScenarioConfig::parse(FIG1B).unwrap();
        assert_eq!(ScenarioConfig::parse(&c.to_json()).unwrap(), c);
    }

    #[test]
    fn amplitudes_checked() {
        let bad = FIG1B.replace("{\"basis\": 0}", "{\"amplitudes\": [[1, 0], [1, 0], [0, 0]]}");
        assert!(matches!(ScenarioConfig::parse(&bad), Err(CliError::Config(_))));
        let two = r#"{"hamiltonian": {"kind": "two_level", "a": 1, "delta": 1}, "initial_state": {"basis": 2}}"#;
        assert!(ScenarioConfig::parse(two).is_err());
    }

    #[test]
    fn invalid_physics_is_config_error() {
        let bad = FIG1B.replace("\"a\": -1.0", "\"a\": 1e400");
        assert!(ScenarioConfig::parse(&bad).is_err());
        let neg = r#"{"hamiltonian": {"kind": "lz", "a": 1, "delta": 1, "omega": 1}, "noise": {"xi": [0.1, -1, 0]}}"#;
        assert!(ScenarioConfig::parse(neg).is_err());
    }
}
