//! Pass/fail reports for numerically verified operator identities.

use serde::Serialize;

/// One verified relation: its name, the largest absolute (or scale-relative)
/// residual observed, and the tolerance it was held to.
#[derive(Debug, Clone, Serialize)]
pub struct CheckRow {
    pub name: String,
    pub residual: f64,
    pub tol: f64,
    pub pass: bool,
}

/// A list of relation checks; the report passes iff every row passes.
#[derive(Debug, Clone, Default, Serialize)]
pub struct RelationReport {
    pub checks: Vec<CheckRow>,
}

impl RelationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, name: impl Into<String>, residual: f64, tol: f64) {
        self.checks.push(CheckRow {
            name: name.into(),
            residual,
            tol,
            pass: residual.is_finite() && residual <= tol,
        });
    }

    /// Record a boolean check as a 0/1 residual against tolerance 0.5.
    pub fn push_flag(&mut self, name: impl Into<String>, ok: bool) {
        self.checks.push(CheckRow {
            name: name.into(),
            residual: if ok { 0.0 } else { 1.0 },
            tol: 0.5,
            pass: ok,
        });
    }

    pub fn merge(&mut self, other: RelationReport) {
        self.checks.extend(other.checks);
    }

    pub fn overall_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn max_residual(&self) -> f64 {
        self.checks.iter().map(|c| c.residual).fold(0.0, f64::max)
    }

    /// Residual of the named check, if present.
    pub fn residual_of(&self, name: &str) -> Option<f64> {
        self.checks
            .iter()
            .find(|c| c.name == name)
            .map(|c| c.residual)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overall_pass_tracks_rows() {
        let mut r = RelationReport::new();
        r.push("a", 1e-14, 1e-10);
        assert!(r.overall_pass());
        r.push("b", 1e-3, 1e-10);
        assert!(!r.overall_pass());
        assert_eq!(r.residual_of("b"), Some(1e-3));
        assert_eq!(r.max_residual(), 1e-3);
    }

    #[test]
    fn nan_residual_fails() {
        let mut r = RelationReport::new();
        r.push("nan", f64::NAN, 1e-10);
        assert!(!r.overall_pass());
    }
}
