//! Machine-readable check reports: one record per check with status,
//! deviation, tolerance, and timing, plus the environment block and the
//! fitted-constant table. Payloads are deterministic given (seed, config)
//! up to the elapsed-time fields.

use rayon::prelude::*;
use serde::Serialize;
use std::time::Instant;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub status: CheckStatus,
    pub max_deviation: f64,
    pub tolerance: f64,
    pub samples: usize,
    pub elapsed_ms: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FittedConstant {
    pub dim: usize,
    pub r: usize,
    pub value: f64,
    pub sample_variance: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Environment {
    pub seed: u64,
    pub dims: Vec<usize>,
    pub r_values: Vec<usize>,
    pub samples: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub suite: String,
    pub checks: Vec<CheckRecord>,
    pub environment: Environment,
    pub fitted_constants: Vec<FittedConstant>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != CheckStatus::Fail)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Serialization with the timing fields zeroed; two runs with the same
    /// seed and configuration produce byte-identical canonical payloads.
    pub fn canonical_json(&self) -> String {
        let mut clone = self.clone();
        for c in &mut clone.checks {
            c.elapsed_ms = 0;
        }
        serde_json::to_string_pretty(&clone).expect("report serializes")
    }

    /// One human-readable line per check for standard output.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let status = match c.status {
                CheckStatus::Pass => "PASS",
                CheckStatus::Fail => "FAIL",
                CheckStatus::Skipped => "SKIP",
            };
            out.push_str(&format!(
                "{status} {name}: max_deviation={dev:.3e} tolerance={tol:.1e} samples={n}\n",
                name = c.name,
                dev = c.max_deviation,
                tol = c.tolerance,
                n = c.samples,
            ));
            if let Some(note) = &c.note {
                out.push_str(&format!("     note: {note}\n"));
            }
        }
        out
    }

    pub fn merge(mut self, other: Report) -> Report {
        self.checks.extend(other.checks);
        self.fitted_constants.extend(other.fitted_constants);
        for d in other.environment.dims {
            if !self.environment.dims.contains(&d) {
                self.environment.dims.push(d);
            }
        }
        for r in other.environment.r_values {
            if !self.environment.r_values.contains(&r) {
                self.environment.r_values.push(r);
            }
        }
        self
    }
}

/// What a check closure reports back.
#[derive(Debug, Clone)]
pub struct CheckOutcome {
    pub max_deviation: f64,
    pub samples: usize,
    pub note: Option<String>,
    pub fitted: Vec<FittedConstant>,
    pub skipped: bool,
}

impl CheckOutcome {
    pub fn deviation(dev: f64, samples: usize) -> Self {
        CheckOutcome {
            max_deviation: dev,
            samples,
            note: None,
            fitted: Vec::new(),
            skipped: false,
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn with_fit(mut self, fit: FittedConstant) -> Self {
        self.fitted.push(fit);
        self
    }
}

type CheckFn = Box<dyn Fn() -> Result<CheckOutcome, String> + Send + Sync>;

/// A named check with its pinned tolerance.
pub struct CheckDef {
    pub name: String,
    pub tolerance: f64,
    pub run: CheckFn,
}

impl CheckDef {
    pub fn new(
        name: impl Into<String>,
        tolerance: f64,
        run: impl Fn() -> Result<CheckOutcome, String> + Send + Sync + 'static,
    ) -> Self {
        CheckDef {
            name: name.into(),
            tolerance,
            run: Box::new(run),
        }
    }
}

/// Sentinel deviation for checks that errored before producing a number;
/// keeps the JSON payload finite.
pub const HARD_FAILURE_DEVIATION: f64 = 1e300;

/// Runs the checks in a parallel pool; record order follows definition
/// order, so payloads stay deterministic.
pub fn run_checks(defs: Vec<CheckDef>) -> (Vec<CheckRecord>, Vec<FittedConstant>) {
    let results: Vec<(CheckRecord, Vec<FittedConstant>)> = defs
        .par_iter()
        .map(|def| {
            let start = Instant::now();
            let outcome = (def.run)();
            let elapsed_ms = start.elapsed().as_millis() as u64;
            match outcome {
                Ok(out) => {
                    let status = if out.skipped {
                        CheckStatus::Skipped
                    } else if out.max_deviation <= def.tolerance {
                        CheckStatus::Pass
                    } else {
                        CheckStatus::Fail
                    };
                    (
                        CheckRecord {
                            name: def.name.clone(),
                            status,
                            max_deviation: out.max_deviation,
                            tolerance: def.tolerance,
                            samples: out.samples,
                            elapsed_ms,
                            note: out.note,
                        },
                        out.fitted,
                    )
                }
                Err(message) => (
                    CheckRecord {
                        name: def.name.clone(),
                        status: CheckStatus::Fail,
                        max_deviation: HARD_FAILURE_DEVIATION,
                        tolerance: def.tolerance,
                        samples: 0,
                        elapsed_ms,
                        note: Some(message),
                    },
                    Vec::new(),
                ),
            }
        })
        .collect();
    let mut records = Vec::with_capacity(results.len());
    let mut fits = Vec::new();
    for (rec, f) in results {
        records.push(rec);
        fits.extend(f);
    }
    (records, fits)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_thresholds_and_canonical_json() {
        let defs = vec![
            CheckDef::new("ok", 1e-10, || Ok(CheckOutcome::deviation(1e-12, 3))),
            CheckDef::new("bad", 1e-10, || Ok(CheckOutcome::deviation(1e-3, 1))),
            CheckDef::new("err", 1e-10, || Err("boom".into())),
        ];
        let (records, _) = run_checks(defs);
        assert_eq!(records[0].status, CheckStatus::Pass);
        assert_eq!(records[1].status, CheckStatus::Fail);
        assert_eq!(records[2].status, CheckStatus::Fail);
        assert_eq!(records[2].note.as_deref(), Some("boom"));
        let report = Report {
            suite: "t".into(),
            checks: records,
            environment: Environment {
                seed: 42,
                dims: vec![3],
                r_values: vec![1],
                samples: 5,
            },
            fitted_constants: vec![],
        };
        assert!(!report.passed());
        let a = report.canonical_json();
        let b = report.canonical_json();
        assert_eq!(a, b);
        assert!(a.contains("\"elapsed_ms\": 0"));
    }
}
