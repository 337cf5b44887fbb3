//! Data for each figure panel, with a gnuplot script stub per panel.

use std::path::{Path, PathBuf};

use lz3_core::algebra::{eigencurves, gap_minima, LZParams};
use lz3_core::closed::{evolve_state, two_level_evolve, StateVector3, Trajectory, TwoLevelParams};
use lz3_core::open::{evolve_density, DensityMatrix3, NoiseSpec};
use lz3_core::propagate::{IntegratorConfig, TimeGrid};
use num_complex::Complex64;

use crate::config::default_grid;
use crate::csv::{fmt_g12, trajectory_csv};
use crate::error::{CliError, CliResult};

pub const FIGURES: [&str; 9] = ["fig1a", "fig1b", "fig1c", "fig2a", "fig2b", "fig2c", "fig3a", "fig3b", "fig4"];

/// One emitted file.
#[derive(Debug, Clone, PartialEq)]
pub struct FigureFile {
    pub name: String,
    pub contents: String,
}

fn comments(pairs: &[(&str, String)]) -> Vec<(String, String)> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

fn grid_comment(g: &TimeGrid) -> String {
    format!("[{}, {}] step {}", fmt_g12(g.t0), fmt_g12(g.t1), fmt_g12(g.dt_out))
}

fn eigen_csv(figure: &str, p: &LZParams, grid: &TimeGrid) -> CliResult<String> {
    let mut out = String::new();
    for (k, v) in [
        ("figure", figure.to_string()),
        ("content", "instantaneous eigenvalues, E1 >= E2 >= E3".to_string()),
        ("a", fmt_g12(p.a)),
        ("delta", fmt_g12(p.delta)),
        ("omega", fmt_g12(p.omega)),
        ("grid", grid_comment(grid)),
    ] {
        out.push_str(&format!("# {k} = {v}\n"));
    }
    for m in gap_minima(p, grid)? {
        out.push_str(&format!("# gap_minimum = t {} gap {} pair {}\n", fmt_g12(m.time), fmt_g12(m.gap), m.pair));
    }
    out.push_str("t,E1,E2,E3\n");
    for (t, ev) in eigencurves(p, grid)? {
        out.push_str(&[t, ev[2], ev[1], ev[0]].map(fmt_g12).join(","));
        out.push('\n');
    }
    Ok(out)
}

fn population_csv(figure: &str, extra: &[(&str, String)], traj: &Trajectory) -> String {
    let mut pairs = vec![("figure", figure.to_string())];
    pairs.extend(extra.iter().cloned());
    trajectory_csv(&comments(&pairs), traj, &[], |_| Vec::new())
}

fn lz_population(figure: &str, p: LZParams, grid: &TimeGrid) -> CliResult<String> {
    let cfg = IntegratorConfig::default();
    let traj = evolve_state(&p, &StateVector3::basis(0)?, grid, &cfg)?;
    Ok(population_csv(
        figure,
        &[
            ("a", fmt_g12(p.a)),
            ("delta", fmt_g12(p.delta)),
            ("omega", fmt_g12(p.omega)),
            ("initial_state", "|1>".into()),
            ("grid", grid_comment(grid)),
        ],
        &traj,
    ))
}

fn two_level_population(figure: &str, p: TwoLevelParams, grid: &TimeGrid) -> CliResult<String> {
    let one = [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)];
    let traj = two_level_evolve(&p, one, grid, &IntegratorConfig::default())?;
    let mut extra =
        vec![("system", "two-level, P3 column is 0".to_string()), ("a", fmt_g12(p.a)), ("delta", fmt_g12(p.delta))];
    if let Some(s) = p.pulse_sigma {
        extra.push(("pulse_sigma", fmt_g12(s)));
    }
    extra.push(("initial_state", "|1>".into()));
    extra.push(("grid", grid_comment(grid)));
    Ok(population_csv(figure, &extra, &traj))
}

fn gnuplot_eigen(files: &[&str]) -> String {
    let mut s =
        String::from("set datafile separator ','\nset key autotitle columnhead\nset xlabel 't'\nset ylabel 'E'\nplot ");
    let parts: Vec<String> = files
        .iter()
        .map(|f| format!("'{f}' using 1:2 with lines, '' using 1:3 with lines, '' using 1:4 with lines"))
        .collect();
    s.push_str(&parts.join(", \\\n     "));
    s.push('\n');
    s
}

fn gnuplot_populations(file: &str, levels: usize) -> String {
    let mut cols: Vec<String> =
        (0..levels).map(|j| format!("'{}' using 1:{} with lines", if j == 0 { file } else { "" }, j + 2)).collect();
    cols.push("'' using 1:5 with lines dashtype 2".into());
    cols.push("'' using 1:6 with lines dashtype 3".into());
    format!(
        "set datafile separator ','\nset key autotitle columnhead\nset xlabel 't'\nset ylabel 'probability'\nplot {}\n",
        cols.join(", \\\n     ")
    )
}

/// All files for `name`, on `grid` (the default window when `None`).
pub fn figure_files(name: &str, grid: Option<TimeGrid>) -> CliResult<Vec<FigureFile>> {
    let grid = grid.unwrap_or_else(default_grid);
    grid.validate()?;
    let file = |n: String, c: String| FigureFile { name: n, contents: c };
    let files = match name {
        "fig1a" => {
            let one = format!("{name}_delta1.csv");
            let two = format!("{name}_delta2.csv");
            vec![
                file(one.clone(), eigen_csv(name, &LZParams::symmetric(-1.0, 1.0), &grid)?),
                file(two.clone(), eigen_csv(name, &LZParams::symmetric(-1.0, 2.0), &grid)?),
                file(format!("{name}.gp"), gnuplot_eigen(&[&one, &two])),
            ]
        }
        "fig3a" => {
            let f = format!("{name}.csv");
            vec![
                file(f.clone(), eigen_csv(name, &LZParams::new(-1.0, 1.0, 5.0), &grid)?),
                file(format!("{name}.gp"), gnuplot_eigen(&[&f])),
            ]
        }
        "fig1b" | "fig1c" | "fig3b" => {
            let p = match name {
                "fig1b" => LZParams::symmetric(-1.0, 1.0),
                "fig1c" => LZParams::symmetric(1.0, 2.0),
                _ => LZParams::new(-1.0, 1.0, 5.0),
            };
            let f = format!("{name}.csv");
            vec![
                file(f.clone(), lz_population(name, p, &grid)?),
                file(format!("{name}.gp"), gnuplot_populations(&f, 3)),
            ]
        }
        "fig2a" | "fig2b" | "fig2c" => {
            let p = match name {
                "fig2a" => TwoLevelParams::new(-1.0, 1.0),
                "fig2b" => TwoLevelParams::new(-1.0, 2.0),
                _ => TwoLevelParams::new(-1.0, 2.0).with_pulse(5.0),
            };
            let f = format!("{name}.csv");
            vec![
                file(f.clone(), two_level_population(name, p, &grid)?),
                file(format!("{name}.gp"), gnuplot_populations(&f, 2)),
            ]
        }
        "fig4" => {
            let p = LZParams::symmetric(1.0, 2.0);
            let n = NoiseSpec::default();
            let rho0 = DensityMatrix3::pure(&StateVector3::basis(0)?);
            let run = evolve_density(&p, &n, &rho0, &grid, &IntegratorConfig::default())?;
            let mut extra = vec![
                ("a", fmt_g12(p.a)),
                ("delta", fmt_g12(p.delta)),
                ("omega", fmt_g12(p.omega)),
                ("xi", format!("{} {} {}", fmt_g12(n.xi[0]), fmt_g12(n.xi[1]), fmt_g12(n.xi[2]))),
                ("initial_state", "|1><1|".into()),
                ("grid", grid_comment(&grid)),
            ];
            for w in &run.warnings {
                extra.push((
                    "positivity_warning",
                    format!("t {} min_eigenvalue {}", fmt_g12(w.t), fmt_g12(w.min_eigenvalue)),
                ));
            }
            let f = format!("{name}.csv");
            vec![
                file(f.clone(), population_csv(name, &extra, &run.trajectory)),
                file(format!("{name}.gp"), gnuplot_populations(&f, 3)),
            ]
        }
        other => return Err(CliError::UnknownFigure(other.to_string())),
    };
    Ok(files)
}

/// Writes the files for `name` into `outdir`, creating it if needed.
pub fn write_figure(name: &str, outdir: &Path, grid: Option<TimeGrid>) -> CliResult<Vec<PathBuf>> {
    let files = figure_files(name, grid)?;
    std::fs::create_dir_all(outdir).map_err(|e| CliError::io(outdir, e))?;
    let mut paths = Vec::new();
    for f in files {
        let path = outdir.join(&f.name);
        std::fs::write(&path, f.contents).map_err(|e| CliError::io(&path, e))?;
        paths.push(path);
    }
    Ok(paths)
}
