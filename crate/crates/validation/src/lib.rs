//! Comparison bookkeeping for the acceptance suite.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

/// Collects comparisons against tolerances and keeps the worst one for the
/// report line.
#[derive(Debug, Default)]
pub struct Tally {
    failures: Vec<String>,
    worst: Option<(f64, String)>,
}

impl Tally {
    /// Relative comparison `|got − want| / |want| <= tol`.
    pub fn rel(&mut self, label: &str, got: f64, want: f64, tol: f64) {
        let err = ((got - want) / want).abs();
        self.record(label, got, want, err, tol, "rel");
    }

    /// Absolute comparison `|got − want| <= tol`.
    pub fn abs(&mut self, label: &str, got: f64, want: f64, tol: f64) {
        let err = (got - want).abs();
        self.record(label, got, want, err, tol, "abs");
    }

    fn record(&mut self, label: &str, got: f64, want: f64, err: f64, tol: f64, kind: &str) {
        let line = format!("{label}: {got:.9} vs {want:.9}, {kind} err {err:.2e} (tol {tol:e})");
        let score = if err.is_nan() { f64::INFINITY } else { err / tol };
        if !(err <= tol) {
            self.failures.push(line.clone());
        }
        if self.worst.as_ref().is_none_or(|(s, _)| score > *s) {
            self.worst = Some((score, line));
        }
    }

    pub fn require(&mut self, ok: bool, msg: impl Into<String>) {
        if !ok {
            self.failures.push(msg.into());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// `Ok` with the worst comparison, or `Err` listing every failure.
    pub fn finish(self) -> Result<String, String> {
        if self.failures.is_empty() {
            Ok(self.worst.map(|(_, l)| format!("worst {l}")).unwrap_or_default())
        } else {
            Err(self.failures.join("; "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn failures_are_listed() {
        let mut t = Tally::default();
        t.rel("a", 1.005, 1.0, 0.01);
        t.abs("b", 0.3, 0.0, 0.1);
        assert!(!t.passed());
        let detail = t.finish().unwrap_err();
        assert!(detail.starts_with("b:") && !detail.contains("a:"));
    }

    #[test]
    fn nan_never_passes() {
        let mut t = Tally::default();
        t.rel("x", f64::NAN, 1.0, 1.0);
        assert!(t.finish().is_err());
    }

    #[test]
    fn worst_comparison_is_reported() {
        let mut t = Tally::default();
        t.abs("small", 1e-9, 0.0, 1e-6);
        t.abs("large", 5e-7, 0.0, 1e-6);
        assert!(t.finish().unwrap().contains("large"));
    }
}
