//! Machine-readable verification reports.

use serde::{Deserialize, Serialize};

/// One named check: `pass` already accounts for the comparison direction
/// (most checks bound a residual from above; density/injectivity checks
/// bound a minimum from below).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    pub residual: f64,
    pub threshold: f64,
    pub pass: bool,
    pub samples: usize,
}

impl CheckRecord {
    /// residual must stay below the threshold.
    pub fn below(name: impl Into<String>, residual: f64, threshold: f64, samples: usize) -> Self {
        CheckRecord {
            name: name.into(),
            residual,
            threshold,
            pass: residual < threshold && residual.is_finite(),
            samples,
        }
    }

    /// residual must stay above the threshold (minimum-style check).
    pub fn above(name: impl Into<String>, residual: f64, threshold: f64, samples: usize) -> Self {
        CheckRecord {
            name: name.into(),
            residual,
            threshold,
            pass: residual > threshold && residual.is_finite(),
            samples,
        }
    }
}

/// A verification report. `elapsed_s` is serialized as null so that
/// reports for identical (config, seed) are byte-identical; the measured
/// wall clock is printed on stderr instead.
#[derive(Debug, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub seed: u64,
    pub checks: Vec<CheckRecord>,
    pub elapsed_s: Option<f64>,
    #[serde(default, skip_serializing_if = "std::collections::BTreeMap::is_empty")]
    pub meta: std::collections::BTreeMap<String, String>,
}

impl Report {
    pub fn new(suite: impl Into<String>, seed: u64, mut checks: Vec<CheckRecord>) -> Self {
        checks.sort_by(|a, b| a.name.cmp(&b.name));
        Report {
            suite: suite.into(),
            seed,
            checks,
            elapsed_s: None,
            meta: Default::default(),
        }
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One line per check for the console.
    pub fn render_lines(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&format!(
                "{} {:<55} residual {:>12.3e}  threshold {:>9.1e}  samples {}\n",
                if c.pass { "PASS" } else { "FAIL" },
                c.name,
                c.residual,
                c.threshold,
                c.samples
            ));
        }
        out
    }
}
