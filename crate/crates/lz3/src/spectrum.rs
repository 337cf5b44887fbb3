//! JSON document written by `lz3 liouvillian`.

use lz3_core::algebra::ComplexMatrix3;
use lz3_core::open::{NoiseSpec, SpectralDecomposition};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

/// Eigenvalues are sorted by descending real part; `amplitudes[i]` belongs to
/// `eigenvalues[i]`, and `a0` repeats `amplitudes[zero_index]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpectrumDoc {
    pub t: f64,
    pub noise: NoiseSpec,
    pub hamiltonian: ComplexMatrix3,
    pub eigenvalues: Vec<Complex64>,
    pub zero_index: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub steady_state: Option<ComplexMatrix3>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub steady_state_error: Option<String>,
    pub initial_state: ComplexMatrix3,
    pub amplitudes: Vec<ComplexMatrix3>,
    pub a0: ComplexMatrix3,
}

impl SpectrumDoc {
    pub fn from_decomposition(
        t: f64,
        noise: NoiseSpec,
        hamiltonian: ComplexMatrix3,
        initial_state: ComplexMatrix3,
        spec: &SpectralDecomposition,
        steady: Result<ComplexMatrix3, String>,
    ) -> Self {
        let amplitudes = spec.amplitudes.clone().unwrap_or_default();
        let a0 = spec.a0.unwrap_or_else(|| ComplexMatrix3::diag([0.0; 3]));
        let (steady_state, steady_state_error) = match steady {
            Ok(m) => (Some(m), None),
            Err(e) => (None, Some(e)),
        };
        Self {
            t,
            noise,
            hamiltonian,
            eigenvalues: spec.lambdas.clone(),
            zero_index: spec.zero_index,
            steady_state,
            steady_state_error,
            initial_state,
            amplitudes,
            a0,
        }
    }

    pub fn parse(text: &str) -> CliResult<Self> {
        let doc: Self = serde_json::from_str(text)?;
        let n = doc.eigenvalues.len();
        if doc.amplitudes.len() != n || doc.zero_index >= n.max(1) {
            return Err(CliError::Config(format!(
                "spectrum document has {n} eigenvalues, {} amplitudes, zero_index {}",
                doc.amplitudes.len(),
                doc.zero_index
            )));
        }
        Ok(doc)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spectrum document serializes")
    }

    /// `ρ(t_rel) = a₀ + Σ_{i≠0} a_i e^{λ_i t_rel}`, with `t_rel` measured
    /// from the moment `initial_state` is taken.
    pub fn reconstruct(&self, t_rel: f64) -> ComplexMatrix3 {
        let mut out = self.a0;
        for (i, (a, l)) in self.amplitudes.iter().zip(&self.eigenvalues).enumerate() {
            if i != self.zero_index {
                out += a.scale((l * t_rel).exp());
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_inconsistent_lengths() {
        let m = ComplexMatrix3::identity();
        let doc = SpectrumDoc {
            t: 0.0,
            noise: NoiseSpec::none(),
            hamiltonian: m,
            eigenvalues: vec![Complex64::new(0.0, 0.0); 2],
            zero_index: 0,
            steady_state: None,
            steady_state_error: None,
            initial_state: m,
            amplitudes: vec![m],
            a0: m,
        };
        assert!(SpectrumDoc::parse(&doc.to_json()).is_err());
    }

    #[test]
    fn garbage_is_parse_error() {
        assert!(matches!(SpectrumDoc::parse("{\"t\": 0"), Err(CliError::Parse { .. })));
    }
}
