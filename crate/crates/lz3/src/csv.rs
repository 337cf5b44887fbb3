//! Trajectory CSV: `#` comment lines, header `t,P1,P2,P3,trace,purity`,
//! floats at 12 significant digits.

use std::fmt::Write as _;

use lz3_core::closed::Trajectory;

use crate::error::{CliError, CliResult};

pub const HEADER: &str = "t,P1,P2,P3,trace,purity";

/// `%.12g`.
pub fn fmt_g12(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".into()
        } else if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    let sci = format!("{x:.11e}");
    let (mant, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-4..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        trim_zeros(format!("{x:.decimals$}"))
    } else {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim_zeros(mant.to_string()), exp.abs())
    }
}

fn trim_zeros(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

/// Renders `traj` with the given `# key = value` comments.
///
/// `extra` names additional columns whose values come from `row(i)`.
pub fn trajectory_csv(
    comments: &[(String, String)],
    traj: &Trajectory,
    extra: &[&str],
    mut row: impl FnMut(usize) -> Vec<f64>,
) -> String {
    let mut out = String::new();
    for (k, v) in comments {
        let _ = writeln!(out, "# {k} = {v}");
    }
    out.push_str(HEADER);
    for e in extra {
        out.push(',');
        out.push_str(e);
    }
    out.push('\n');
    for (i, (t, r)) in traj.times.iter().zip(&traj.records).enumerate() {
        let mut fields = vec![*t, r.populations[0], r.populations[1], r.populations[2], r.trace, r.purity];
        fields.extend(row(i));
        let line: Vec<String> = fields.into_iter().map(fmt_g12).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}

/// Parsed numeric table with its comment lines.
#[derive(Debug, Clone, PartialEq)]
pub struct CsvTable {
    pub comments: Vec<String>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl CsvTable {
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let j = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[j]).collect())
    }
}

/// Reads a numeric CSV with `#` comments and one header line.
pub fn read_csv(text: &str) -> CliResult<CsvTable> {
    let mut comments = Vec::new();
    let mut columns: Option<Vec<String>> = None;
    let mut rows = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim_end_matches('\r');
        if let Some(c) = line.strip_prefix('#') {
            comments.push(c.trim().to_string());
            continue;
        }
        if line.is_empty() {
            continue;
        }
        match &columns {
            None => columns = Some(line.split(',').map(|s| s.trim().to_string()).collect()),
            Some(cols) => {
                let vals: Result<Vec<f64>, _> = line.split(',').map(|s| s.trim().parse::<f64>()).collect();
                let vals = vals.map_err(|e| CliError::Config(format!("line {}: {e}", n + 1)))?;
                if vals.len() != cols.len() {
                    return Err(CliError::Config(format!(
                        "line {}: {} fields, header has {}",
                        n + 1,
                        vals.len(),
                        cols.len()
                    )));
                }
                rows.push(vals);
            }
        }
    }
    let columns = columns.ok_or_else(|| CliError::Config("missing CSV header".into()))?;
    Ok(CsvTable { comments, columns, rows })
}

/// Reads a trajectory CSV, requiring the standard leading columns.
pub fn read_trajectory_csv(text: &str) -> CliResult<CsvTable> {
    let table = read_csv(text)?;
    let want: Vec<&str> = HEADER.split(',').collect();
    if table.columns.len() < want.len() || table.columns[..want.len()] != want[..] {
        return Err(CliError::Config(format!("expected header starting with `{HEADER}`")));
    }
    Ok(table)
}
