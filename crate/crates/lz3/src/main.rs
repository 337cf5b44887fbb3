use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use lz3::commands;
use lz3::config::{OutputFormat, ScenarioConfig};
use lz3::error::{CliError, CliResult, EXIT_REGRESSION};
use lz3::figures::write_figure;
use lz3::sweep::SweepConfig;
use num_complex::Complex64;

#[derive(Parser)]
#[command(name = "lz3", version, about = "Three-level Landau-Zener dynamics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Propagate one scenario and write its trajectory.
    Simulate {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Regenerate the data behind one figure panel.
    Figure {
        name: String,
        #[arg(long)]
        outdir: PathBuf,
    },
    /// Compare the analytic su(2) solution against direct integration.
    CompareAnalytic {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Spectrum and steady state of the Liouvillian frozen at time `t`.
    Liouvillian {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        t: f64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Final populations over a parameter grid.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Ensemble of stochastic Schrödinger-Langevin trajectories.
    Langevin {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        trajectories: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    #[command(hide = true)]
    SpecfunEval {
        #[arg(long, allow_negative_numbers = true)]
        nu_re: f64,
        #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
        nu_im: f64,
        #[arg(long, allow_negative_numbers = true)]
        z_re: f64,
        #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
        z_im: f64,
    },
}

fn emit(text: &str, path: Option<&Path>) -> CliResult<()> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Io { path: p.to_path_buf(), source: e }),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Io { path: PathBuf::from("<stdout>"), source: e }),
    }
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Simulate { config, output, format } => {
            let mut cfg = ScenarioConfig::load(&config)?;
            if let Some(f) = format {
                cfg.output.format = match f {
                    Format::Csv => OutputFormat::Csv,
                    Format::Json => OutputFormat::Json,
                };
            }
            let text = commands::simulate(&cfg)?;
            emit(&text, output.as_deref().or(cfg.output.path.as_deref()))
        }
        Command::Figure { name, outdir } => {
            for p in write_figure(&name, &outdir, None)? {
                eprintln!("wrote {}", p.display());
            }
            Ok(())
        }
        Command::CompareAnalytic { config, output } => {
            let cfg = ScenarioConfig::load(&config)?;
            let report = commands::compare_analytic(&cfg)?;
            let mut text = serde_json::to_string_pretty(&report).expect("report serializes");
            text.push('\n');
            emit(&text, output.as_deref().or(cfg.output.path.as_deref()))?;
            if report.passed {
                Ok(())
            } else {
                Err(CliError::Regression { max: report.max_deviation, bound: report.bound })
            }
        }
        Command::Liouvillian { config, t, output } => {
            let cfg = ScenarioConfig::load(&config)?;
            let mut text = commands::liouvillian(&cfg, t)?.to_json();
            text.push('\n');
            emit(&text, output.as_deref().or(cfg.output.path.as_deref()))
        }
        Command::Sweep { config, output } => {
            let cfg = SweepConfig::load(&config)?;
            emit(&cfg.run_csv(), output.as_deref())
        }
        Command::Langevin { config, trajectories, seed, output } => {
            let cfg = ScenarioConfig::load(&config)?;
            let n = trajectories.unwrap_or(cfg.langevin.trajectories);
            let s = seed.unwrap_or(cfg.langevin.seed);
            let text = commands::langevin(&cfg, n, s)?;
            emit(&text, output.as_deref().or(cfg.output.path.as_deref()))
        }
        Command::SpecfunEval { nu_re, nu_im, z_re, z_im } => {
            emit(&commands::specfun_eval(Complex64::new(nu_re, nu_im), Complex64::new(z_re, z_im))?, None)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("lz3: {e}");
            let code = e.exit_code();
            debug_assert!(code != EXIT_REGRESSION || matches!(e, CliError::Regression { .. }));
            ExitCode::from(code as u8)
        }
    }
}
