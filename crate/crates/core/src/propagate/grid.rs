use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Upper bound on `(t1 − t0) / dt_out`.
pub const MAX_GRID_POINTS: f64 = 1e7;

/// Output sampling grid `t0, t0 + dt_out, …, t1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TimeGrid {
    pub t0: f64,
    pub t1: f64,
    pub dt_out: f64,
}

impl TimeGrid {
    pub fn new(t0: f64, t1: f64, dt_out: f64) -> Result<Self> {
        let g = Self { t0, t1, dt_out };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.t0.is_finite() && self.t1.is_finite() && self.dt_out.is_finite()) {
            return Err(Error::InvalidParameter("grid bounds must be finite".into()));
        }
        if self.t0 >= self.t1 {
            return Err(Error::InvalidParameter(format!("grid needs t0 < t1, got {} >= {}", self.t0, self.t1)));
        }
        if self.dt_out <= 0.0 {
            return Err(Error::InvalidParameter(format!("dt_out must be positive, got {}", self.dt_out)));
        }
        if (self.t1 - self.t0) / self.dt_out > MAX_GRID_POINTS {
            return Err(Error::InvalidParameter("grid has more than 1e7 intervals".into()));
        }
        Ok(())
    }

    /// Number of intervals; a trailing remainder shorter than `1e-9·dt_out` is dropped.
    pub fn intervals(&self) -> usize {
        let n = (self.t1 - self.t0) / self.dt_out;
        (n - 1e-9).ceil().max(1.0) as usize
    }

    /// Sample times; the last one is exactly `t1`.
    pub fn times(&self) -> Vec<f64> {
        let n = self.intervals();
        let mut out: Vec<f64> = (0..n).map(|i| self.t0 + i as f64 * self.dt_out).collect();
        out.push(self.t1);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn endpoints_and_count() {
        let g = TimeGrid::new(-20.0, 20.0, 0.01).unwrap();
        let t = g.times();
        assert_eq!(t.len(), 4001);
        assert_eq!(t[0], -20.0);
        assert_eq!(*t.last().unwrap(), 20.0);
        assert!(t.windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn uneven_last_interval() {
        let t = TimeGrid::new(0.0, 1.0, 0.3).unwrap().times();
        assert_eq!(t.len(), 5);
        assert_eq!(t[4], 1.0);
    }

    #[test]
    fn rejects_bad_grids() {
        assert!(TimeGrid::new(1.0, 0.0, 0.1).is_err());
        assert!(TimeGrid::new(0.0, 1.0, 0.0).is_err());
        assert!(TimeGrid::new(0.0, 1e8, 1.0).is_err());
        assert!(TimeGrid::new(0.0, f64::NAN, 1.0).is_err());
    }
}
