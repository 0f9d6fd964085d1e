//! Run reports: per-case results checked against declared tolerances,
//! serialized as JSON next to the CSV tables.

use crate::config::ExperimentConfig;
use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct CaseResult {
    pub id: String,
    pub value: f64,
    pub tolerance: f64,
    /// How the value relates to the tolerance: "max" means value <= tol
    /// passes, "min" means value >= tol passes.
    pub direction: &'static str,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CaseResult {
    pub fn le(id: impl Into<String>, value: f64, tolerance: f64) -> Self {
        CaseResult {
            id: id.into(),
            value,
            tolerance,
            direction: "max",
            pass: value.is_finite() && value <= tolerance,
            note: None,
        }
    }

    pub fn ge(id: impl Into<String>, value: f64, tolerance: f64) -> Self {
        CaseResult {
            id: id.into(),
            value,
            tolerance,
            direction: "min",
            pass: value.is_finite() && value >= tolerance,
            note: None,
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

/// Serializable run report. Wall-clock time is intentionally not part of
/// the serialized report (it goes to stderr) so that reruns with the same
/// config and seed are byte-identical.
#[derive(Debug, Serialize)]
pub struct RunReport {
    pub experiment: &'static str,
    pub seed: u64,
    pub config: ExperimentConfig,
    pub cases: Vec<CaseResult>,
    pub passed: bool,
    pub artifacts: Vec<String>,
}

impl RunReport {
    pub fn new(config: &ExperimentConfig, cases: Vec<CaseResult>, artifacts: Vec<String>) -> Self {
        let passed = cases.iter().all(|c| c.pass);
        RunReport {
            experiment: config.experiment.name(),
            seed: config.seed,
            config: config.clone(),
            cases,
            passed,
            artifacts,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn failing_case(&self) -> Option<&CaseResult> {
        self.cases.iter().find(|c| !c.pass)
    }
}
