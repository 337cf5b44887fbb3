use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use lz3::csv::{read_csv, read_trajectory_csv, CsvTable};
use lz3::spectrum::SpectrumDoc;
use lz3_core::algebra::ComplexMatrix3;
use lz3_core::closed::StateVector3;
use lz3_core::open::{evolve_density, DensityMatrix3};
use lz3_core::propagate::{IntegratorConfig, TimeGrid};
use tempfile::TempDir;

fn lz3(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lz3")).args(args).output().expect("run lz3")
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn stdout_table(out: &Output) -> CsvTable {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    read_trajectory_csv(&String::from_utf8(out.stdout.clone()).unwrap()).unwrap()
}

fn check_row_identity(t: &CsvTable) {
    for r in &t.rows {
        assert!((r[1] + r[2] + r[3] - r[4]).abs() <= 1e-10);
    }
}

const FIG1B: &str =
    r#"{"hamiltonian": {"kind": "lz", "a": -1, "delta": 1, "omega": 1}, "initial_state": {"basis": 0}}"#;

#[test]
fn simulate_fig1b_conserves_probability() {
    let dir = TempDir::new().unwrap();
    let cfg = write(dir.path(), "c.json", FIG1B);
    let t = stdout_table(&lz3(&["simulate", "--config", cfg.to_str().unwrap()]));
    assert_eq!(t.rows.len(), 4001);
    assert!(t.comments.iter().any(|c| c.starts_with("hamiltonian")));
    check_row_identity(&t);
    for r in &t.rows {
        assert!((r[1] + r[2] + r[3] - 1.0).abs() <= 1e-8);
    }
}

#[test]
fn simulate_fig4_purity_never_increases() {
    let dir = TempDir::new().unwrap();
    let text = r#"{"hamiltonian": {"kind": "lz", "a": 1, "delta": 2, "omega": 2}, "noise": {"xi": [0.1, 0.1, 0.1]}}"#;
    let cfg = write(dir.path(), "c.json", text);
    let t = stdout_table(&lz3(&["simulate", "--config", cfg.to_str().unwrap()]));
    check_row_identity(&t);
    let pur = t.column("purity").unwrap();
    // the column is printed at 12 significant digits
    assert!(pur.windows(2).all(|w| w[1] <= w[0] + 1e-12));
    assert!(*pur.last().unwrap() < 0.99);
}

#[test]
fn simulate_json_and_output_file() {
    let dir = TempDir::new().unwrap();
    let cfg = write(dir.path(), "c.json", FIG1B);
    let out = dir.path().join("run.json");
    let o =
        lz3(&["simulate", "--config", cfg.to_str().unwrap(), "--format", "json", "--output", out.to_str().unwrap()]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(v["trajectory"]["times"].as_array().unwrap().len(), 4001);
    assert!(v["trajectory"]["records"][0]["state"].is_array());
}

#[test]
fn misspelled_key_exits_2_and_names_it() {
    let dir = TempDir::new().unwrap();
    let cfg = write(dir.path(), "c.json", &FIG1B.replace("\"omega\"", "\"omga\""));
    let o = lz3(&["simulate", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("omga") && err.contains("line"), "{err}");
}

#[test]
fn missing_config_file_exits_2() {
    assert_eq!(lz3(&["simulate", "--config", "/nonexistent/lz3.json"]).status.code(), Some(2));
}

#[test]
fn figure_fig1a_middle_curve_vanishes() {
    let dir = TempDir::new().unwrap();
    let o = lz3(&["figure", "fig1a", "--outdir", dir.path().to_str().unwrap()]);
    assert!(o.status.success());
    for f in ["fig1a_delta1.csv", "fig1a_delta2.csv"] {
        let t = read_csv(&std::fs::read_to_string(dir.path().join(f)).unwrap()).unwrap();
        assert_eq!(t.columns, ["t", "E1", "E2", "E3"]);
        assert!(t.column("E2").unwrap().iter().all(|e| e.abs() <= 1e-12));
    }
    assert!(dir.path().join("fig1a.gp").exists());
}

#[test]
fn figure_fig3a_two_symmetric_pseudo_crossings() {
    let dir = TempDir::new().unwrap();
    assert!(lz3(&["figure", "fig3a", "--outdir", dir.path().to_str().unwrap()]).status.success());
    let t = read_csv(&std::fs::read_to_string(dir.path().join("fig3a.csv")).unwrap()).unwrap();
    let minima: Vec<f64> = t
        .comments
        .iter()
        .filter_map(|c| c.strip_prefix("gap_minimum = t "))
        .map(|c| c.split_whitespace().next().unwrap().parse().unwrap())
        .collect();
    assert_eq!(minima.len(), 2, "{minima:?}");
    assert!((minima[0] + minima[1]).abs() < 1e-6);
    assert!(minima[1] > 3.0 && minima[1] < 6.0);
}

#[test]
fn figure_fig2c_is_flat_after_the_pulse() {
    let dir = TempDir::new().unwrap();
    assert!(lz3(&["figure", "fig2c", "--outdir", dir.path().to_str().unwrap()]).status.success());
    let t = read_trajectory_csv(&std::fs::read_to_string(dir.path().join("fig2c.csv")).unwrap()).unwrap();
    let late: Vec<f64> = t.rows.iter().filter(|r| r[0] >= 15.0).map(|r| r[1]).collect();
    let amp = late.iter().cloned().fold(f64::MIN, f64::max) - late.iter().cloned().fold(f64::MAX, f64::min);
    assert!(amp < 1e-3, "{amp}");
}

#[test]
fn unknown_figure_exits_2() {
    let dir = TempDir::new().unwrap();
    let o = lz3(&["figure", "fig9", "--outdir", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown figure"));
}

#[test]
fn figure_output_is_byte_identical() {
    let (a, b) = (TempDir::new().unwrap(), TempDir::new().unwrap());
    for d in [&a, &b] {
        assert!(lz3(&["figure", "fig1b", "--outdir", d.path().to_str().unwrap()]).status.success());
    }
    let read = |d: &TempDir| std::fs::read(d.path().join("fig1b.csv")).unwrap();
    assert_eq!(read(&a), read(&b));
}

fn compare(text: &str) -> Output {
    let dir = TempDir::new().unwrap();
    let cfg = write(dir.path(), "c.json", text);
    lz3(&["compare-analytic", "--config", cfg.to_str().unwrap()])
}

#[test]
fn compare_analytic_agrees_for_su2() {
    for d in [1, 2] {
        let o = compare(&format!(r#"{{"hamiltonian": {{"kind": "lz", "a": -1, "delta": {d}, "omega": {d}}}}}"#));
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
        let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        assert!(v["max_deviation"].as_f64().unwrap() <= 1e-6);
    }
}

#[test]
fn compare_analytic_refuses_su3() {
    let o = compare(r#"{"hamiltonian": {"kind": "lz", "a": -1, "delta": 1, "omega": 5}}"#);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("DomainError"));
}

#[test]
fn compare_analytic_regression_exit_4() {
    let o = compare(r#"{"hamiltonian": {"kind": "lz", "a": -1, "delta": 1, "omega": 1}, "compare": {"bound": 1e-16}}"#);
    assert_eq!(o.status.code(), Some(4));
    assert!(!o.stdout.is_empty());
}

fn spectrum(text: &str, t: &str) -> SpectrumDoc {
    let dir = TempDir::new().unwrap();
    let cfg = write(dir.path(), "c.json", text);
    let o = lz3(&["liouvillian", "--config", cfg.to_str().unwrap(), "--t", t]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    SpectrumDoc::parse(&String::from_utf8(o.stdout).unwrap()).unwrap()
}

const FIG4: &str =
    r#"{"hamiltonian": {"kind": "lz", "a": 1, "delta": 2, "omega": 2}, "noise": {"xi": [0.1, 0.1, 0.1]}}"#;

#[test]
fn liouvillian_isotropic_spectrum() {
    let doc = spectrum(FIG4, "0");
    assert_eq!(doc.eigenvalues.len(), 9);
    assert_eq!(doc.eigenvalues.iter().filter(|l| l.norm() <= 1e-10).count(), 1);
    assert_eq!(doc.eigenvalues.iter().filter(|l| l.re < 0.0).count(), 8);
    assert!(doc.eigenvalues.windows(2).all(|w| w[0].re >= w[1].re));
    let ss = doc.steady_state.unwrap();
    assert!((ss - ComplexMatrix3::diag([1.0 / 3.0; 3])).max_abs() <= 1e-8);
}

#[test]
fn liouvillian_noiseless_is_imaginary() {
    let doc = spectrum(r#"{"hamiltonian": {"kind": "lz", "a": 1, "delta": 1, "omega": 1}}"#, "-2.5");
    assert!(doc.eigenvalues.iter().all(|l| l.re.abs() <= 1e-10));
    assert_eq!(doc.steady_state_error.as_deref(), Some("DegenerateKernel"));
}

#[test]
fn liouvillian_document_reconstructs_frozen_dynamics() {
    let doc = spectrum(FIG4, "1.5");
    let grid = TimeGrid::new(0.0, 50.0, 0.5).unwrap();
    let rho0 = DensityMatrix3::pure(&StateVector3::basis(0).unwrap());
    let run = evolve_density(&doc.hamiltonian, &doc.noise, &rho0, &grid, &IntegratorConfig::default()).unwrap();
    for (t, r) in run.trajectory.times.iter().zip(&run.trajectory.records) {
        assert!((doc.reconstruct(*t) - r.density.unwrap()).max_abs() <= 1e-6);
    }
}

#[test]
fn sweep_orders_rows_and_reports_adiabatic_trend() {
    let dir = TempDir::new().unwrap();
    let cfg =
        write(dir.path(), "s.json", r#"{"a": [-1], "delta": [2, 1], "grid": {"t0": -20, "t1": 20, "dt_out": 0.1}}"#);
    let o = lz3(&["sweep", "--config", cfg.to_str().unwrap()]);
    assert!(o.status.success());
    let t = read_csv(&String::from_utf8(o.stdout).unwrap().replace(",\n", ",0\n")).unwrap();
    assert_eq!(t.column("delta").unwrap(), [1.0, 2.0]);
    let p2 = t.column("P2").unwrap();
    // level 2 empties as the sweep becomes adiabatic
    assert!(p2[1] < p2[0], "{p2:?}");
}

#[test]
fn sweep_grid_shapes() {
    let dir = TempDir::new().unwrap();
    let empty = write(dir.path(), "e.json", r#"{"a": [], "delta": [1]}"#);
    let o = lz3(&["sweep", "--config", empty.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(String::from_utf8(o.stdout).unwrap(), "a,delta,omega,xi,P1,P2,P3,trace,purity,error\n");

    let four =
        write(dir.path(), "f.json", r#"{"a": [1, -1], "delta": [0.5, 1], "grid": {"t0": -5, "t1": 5, "dt_out": 0.5}}"#);
    let run = || lz3(&["sweep", "--config", four.to_str().unwrap()]).stdout;
    let first = run();
    assert_eq!(first, run());
    let text = String::from_utf8(first).unwrap();
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 4);
    assert!(rows[0].starts_with("-1,0.5,") && rows[3].starts_with("1,1,"));
}

#[test]
fn sweep_point_failure_is_recorded() {
    let dir = TempDir::new().unwrap();
    let cfg = write(dir.path(), "s.json", r#"{"a": [1], "delta": [1], "omega": [1], "xi": [0.1], "pulse_sigma": -1}"#);
    let o = lz3(&["sweep", "--config", cfg.to_str().unwrap()]);
    assert!(o.status.success());
    let text = String::from_utf8(o.stdout).unwrap();
    let row = text.lines().nth(1).unwrap();
    assert!(row.ends_with("InvalidParameter"), "{row}");
}

#[test]
fn seeded_langevin_is_byte_identical() {
    let dir = TempDir::new().unwrap();
    let text = r#"{"hamiltonian": {"kind": "lz", "a": 1, "delta": 2, "omega": 2}, "noise": {"xi": [0.1, 0.1, 0.1]},
                   "grid": {"t0": -2, "t1": 2, "dt_out": 0.1}, "langevin": {"dt": 0.01}}"#;
    let cfg = write(dir.path(), "c.json", text);
    let run = |seed: &str| {
        lz3(&["langevin", "--config", cfg.to_str().unwrap(), "--trajectories", "50", "--seed", seed]).stdout
    };
    let a = run("5");
    assert_eq!(a, run("5"));
    assert_ne!(a, run("6"));
    let t = read_trajectory_csv(&String::from_utf8(a).unwrap()).unwrap();
    assert_eq!(&t.columns[6..], ["se1", "se2", "se3"]);
    check_row_identity(&t);
}

#[test]
fn specfun_eval_is_hidden_but_works() {
    let help = String::from_utf8(lz3(&["--help"]).stdout).unwrap();
    assert!(!help.contains("specfun-eval"));
    let o = lz3(&["specfun-eval", "--nu-re", "0", "--z-re", "1"]);
    let line = String::from_utf8(o.stdout).unwrap();
    let re: f64 = line.split(',').next().unwrap().parse().unwrap();
    assert!((re - (-0.25f64).exp()).abs() < 1e-11);
}
