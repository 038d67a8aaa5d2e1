//! Machine-readable verification reports, convergence tables and k-rules.

use serde::Serialize;

use crate::error::Error;

/// Named residual of one algebraic identity.
#[derive(Debug, Clone, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub model: String,
    pub lambda: u32,
    pub k: f64,
    pub checks: Vec<IdentityCheck>,
    pub overall_pass: bool,
}

impl VerificationReport {
    pub fn new(model: &str, lambda: u32, k: f64) -> Self {
        VerificationReport {
            model: model.to_string(),
            lambda,
            k,
            checks: Vec::new(),
            overall_pass: true,
        }
    }

    pub fn push(&mut self, name: &str, residual: f64, tolerance: f64) {
        let pass = residual <= tolerance;
        self.overall_pass &= pass;
        self.checks.push(IdentityCheck {
            name: name.to_string(),
            residual,
            tolerance,
            pass,
        });
    }

    pub fn residual(&self, name: &str) -> Option<f64> {
        self.checks.iter().find(|c| c.name == name).map(|c| c.residual)
    }

    pub fn max_residual(&self) -> f64 {
        self.checks.iter().map(|c| c.residual).fold(0.0, f64::max)
    }
}

/// One row of a strong-convergence scan.
///
/// `norm` is ‖(f̂_Λ − f·)φ‖ for the scan's fixed test vector φ; `edge_norm`
/// is the same quantity for the per-Λ edge vector (top-weight state), which
/// documents the failure of operator-norm convergence.
#[derive(Debug, Clone, Serialize)]
pub struct ConvergenceRow {
    pub lambda: u32,
    pub k: f64,
    pub norm: f64,
    pub edge_norm: f64,
    /// ‖(x̄^i − (x^i/r)·)φ‖ per Cartesian coordinate (sphere scans only).
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub coordinate_norms: Vec<f64>,
    pub description: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConvergenceTable {
    pub rows: Vec<ConvergenceRow>,
    /// Non-fatal notes, e.g. a k-rule below a proposition's hypothesis.
    pub warnings: Vec<String>,
}

impl ConvergenceTable {
    pub fn new() -> Self {
        ConvergenceTable {
            rows: Vec::new(),
            warnings: Vec::new(),
        }
    }

    /// Λ must be strictly increasing across rows.
    pub fn push(&mut self, row: ConvergenceRow) {
        if let Some(last) = self.rows.last() {
            assert!(row.lambda > last.lambda, "Λ must be strictly increasing");
        }
        self.rows.push(row);
    }
}

impl Default for ConvergenceTable {
    fn default() -> Self {
        Self::new()
    }
}

/// Rule mapping Λ to the potential stiffness k.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum KRule {
    Fixed(f64),
    /// k = Λ²(Λ+1)² — the paper's example choice for the algebra scans.
    Lambda2,
    /// k = 2Λ(Λ+1)(2Λ+1)² — hypothesis of the circle strong-convergence bound.
    Prop33,
    /// k = 2^{3Λ+3}·Λ^{Λ+5}·(Λ+1) — hypothesis of the sphere bound.
    Prop43,
}

impl KRule {
    pub fn k_for(&self, lambda: u32) -> Result<f64, Error> {
        let lam = lambda as f64;
        let k = match self {
            KRule::Fixed(k) => *k,
            KRule::Lambda2 => lam * lam * (lam + 1.0) * (lam + 1.0),
            KRule::Prop33 => 2.0 * lam * (lam + 1.0) * (2.0 * lam + 1.0).powi(2),
            KRule::Prop43 => {
                2f64.powi(3 * lambda as i32 + 3) * lam.powi(lambda as i32 + 5) * (lam + 1.0)
            }
        };
        if !(k > 0.0) || !k.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "k-rule {self:?} gives non-positive or non-finite k at Λ={lambda}"
            )));
        }
        Ok(k)
    }
}

impl std::str::FromStr for KRule {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "lambda2" => Ok(KRule::Lambda2),
            "prop33" => Ok(KRule::Prop33),
            "prop43" => Ok(KRule::Prop43),
            other => other
                .parse::<f64>()
                .map(KRule::Fixed)
                .map_err(|_| Error::Config(format!("unknown k-rule '{other}'"))),
        }
    }
}

/// Default k for circle runs: satisfies both the cutoff-consistency bound
/// and the strong-convergence hypothesis.
pub fn default_circle_k(lambda: u32) -> f64 {
    let a = KRule::Lambda2.k_for(lambda).unwrap_or(f64::NAN);
    let b = KRule::Prop33.k_for(lambda).unwrap_or(f64::NAN);
    a.max(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k_rules_evaluate() {
        assert_eq!(KRule::Lambda2.k_for(5).unwrap(), 900.0);
        assert_eq!(KRule::Prop33.k_for(2).unwrap(), 300.0);
        // 2^6 · 1^6 · 2 = 128
        assert_eq!(KRule::Prop43.k_for(1).unwrap(), 128.0);
        assert!(KRule::Fixed(-1.0).k_for(3).is_err());
        assert!(KRule::Prop43.k_for(0).is_err());
    }

    #[test]
    fn k_rule_parses() {
        assert_eq!("lambda2".parse::<KRule>().unwrap(), KRule::Lambda2);
        assert_eq!("42.5".parse::<KRule>().unwrap(), KRule::Fixed(42.5));
        assert!("bogus".parse::<KRule>().is_err());
    }

    #[test]
    fn report_aggregates_pass_flags() {
        let mut rep = VerificationReport::new("circle", 2, 36.0);
        rep.push("a", 1e-15, 1e-12);
        assert!(rep.overall_pass);
        rep.push("b", 1e-3, 1e-12);
        assert!(!rep.overall_pass);
        assert_eq!(rep.residual("b"), Some(1e-3));
    }
}
