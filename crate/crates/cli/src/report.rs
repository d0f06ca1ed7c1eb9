//! The JSON report written by every subcommand.

use bajra_core::diagonal::{FdSteps, ORDER_TOLERANCES};
use bajra_core::invariance::{NecessaryResiduals, Tolerances};
use serde::{Deserialize, Serialize};

use crate::spec::FamilySpec;

/// Replaces NaN and infinities by `f64::MAX` so every number in a report is finite.
pub fn finite(x: f64) -> f64 {
    if x.is_finite() {
        x
    } else {
        f64::MAX
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ToleranceDoc {
    pub invariance: f64,
    pub necessary: f64,
    pub delta_spread: f64,
    pub system: f64,
    pub reconstruction: f64,
    pub gamma: f64,
    pub equal_weights: f64,
    /// Per-order bounds for closed form against finite differences.
    pub diagonal: [f64; 4],
    pub fd_steps: [f64; 4],
}

impl ToleranceDoc {
    pub fn new(tol: &Tolerances<f64>, steps: &FdSteps<f64>) -> Self {
        Self {
            invariance: tol.invariance,
            necessary: tol.necessary,
            delta_spread: tol.delta_spread,
            system: tol.system,
            reconstruction: tol.reconstruction,
            gamma: tol.gamma,
            equal_weights: tol.equal_weights,
            diagonal: ORDER_TOLERANCES,
            fd_steps: [steps.first, steps.second, steps.third, steps.fourth],
        }
    }

    pub fn tolerances(&self) -> Tolerances<f64> {
        Tolerances {
            invariance: self.invariance,
            necessary: self.necessary,
            delta_spread: self.delta_spread,
            system: self.system,
            reconstruction: self.reconstruction,
            gamma: self.gamma,
            equal_weights: self.equal_weights,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ResidualsDoc {
    /// Points of the sweep (pairs for the invariance grid).
    pub grid_size: usize,
    pub max_invariance: Option<f64>,
    pub cond1: Option<f64>,
    pub cond2: Option<f64>,
    pub cond3: Option<f64>,
    pub cond4: Option<f64>,
    pub delta_fit: Option<f64>,
    pub delta_spread: Option<f64>,
}

impl ResidualsDoc {
    pub fn set_necessary(&mut self, n: &NecessaryResiduals<f64>) {
        self.cond1 = Some(finite(n.cond1));
        self.cond2 = Some(finite(n.cond2));
        self.cond3 = Some(finite(n.cond3));
        self.cond4 = Some(finite(n.cond4));
        self.delta_fit = Some(finite(n.delta_fit));
        self.delta_spread = Some(finite(n.delta_spread));
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiagonalDoc {
    /// Sup-norm over both means and all points of `|closed form - oracle|`, per order.
    pub max_discrepancy: [f64; 4],
    pub points: usize,
    pub skipped: usize,
    /// Sup-norms of the diagonal system, when requested.
    pub system: Option<[f64; 4]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassificationDoc {
    pub gamma: Option<f64>,
    pub f_coeffs: Option<[f64; 4]>,
    pub g_coeffs: Option<[f64; 4]>,
    pub eta: Option<f64>,
    pub failed_conditions: Vec<String>,
    pub reason: Option<String>,
    pub system: [f64; 4],
    pub equal_weight_fraction: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RecoveryDoc {
    pub function: String,
    pub x0: f64,
    pub domain: [f64; 2],
    pub gamma: Option<f64>,
    /// `u = a S + b C`
    pub u: Option<[f64; 2]>,
    /// `v = c S + d C`
    pub v: Option<[f64; 2]>,
    pub wronskian: Option<f64>,
    pub positive: Option<[f64; 2]>,
    pub max_residual: Option<f64>,
    pub schwarzian_spread: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepDoc {
    pub seed: u64,
    pub gammas: Vec<f64>,
    pub draws: usize,
    pub families: usize,
    pub invariance_failures: usize,
    pub classification_failures: usize,
    pub max_gamma_error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorDoc {
    /// Name of the violated invariant or failed computation, e.g. `NotIndependent`.
    pub kind: String,
    pub message: String,
    pub rejected: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub command: String,
    pub spec: Option<FamilySpec>,
    pub builtin: Option<String>,
    pub residuals: ResidualsDoc,
    pub diagonal_checks: Option<DiagonalDoc>,
    pub classification: Option<ClassificationDoc>,
    pub recovery: Option<RecoveryDoc>,
    pub sweep: Option<SweepDoc>,
    pub error: Option<ErrorDoc>,
    pub verdict: String,
    pub passed: bool,
    pub tolerances: ToleranceDoc,
    pub wall_time: f64,
}

impl ReportDocument {
    pub fn new(command: &str, tolerances: ToleranceDoc) -> Self {
        Self {
            command: command.to_string(),
            spec: None,
            builtin: None,
            residuals: ResidualsDoc::default(),
            diagonal_checks: None,
            classification: None,
            recovery: None,
            sweep: None,
            error: None,
            verdict: String::new(),
            passed: false,
            tolerances,
            wall_time: 0.0,
        }
    }

    /// Recomputes the pass/fail decision from the recorded numbers and tolerances.
    pub fn derive_passed(&self) -> bool {
        if self.error.is_some() {
            return false;
        }
        let t = &self.tolerances;
        match self.command.as_str() {
            "verify-invariance" => self.residuals.max_invariance.is_some_and(|r| r <= t.invariance),
            "verify-diagonal" => self.diagonal_checks.as_ref().is_some_and(|d| {
                d.points > 0
                    && d.max_discrepancy.iter().zip(&t.diagonal).all(|(v, tol)| v <= tol)
                    && d.system.is_none_or(|s| s.iter().all(|&v| v <= t.system))
            }),
            "classify" => {
                self.verdict == "ConfirmedFamily"
                    && self.classification.as_ref().is_some_and(|c| match (c.gamma, &self.spec) {
                        (Some(g), Some(spec)) => (g - spec.gamma).abs() <= t.gamma,
                        (Some(_), None) => true,
                        (None, _) => false,
                    })
            }
            "recover" => self.recovery.as_ref().and_then(|r| r.max_residual).is_some_and(|r| r <= t.reconstruction),
            "sweep" => {
                self.sweep.as_ref().is_some_and(|s| s.invariance_failures == 0 && s.classification_failures == 0)
            }
            _ => false,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
