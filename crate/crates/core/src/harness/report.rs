use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{json, Map, Value};

use super::trials::Outcome;
use super::{CampaignConfig, Suite};
use crate::bounds::BoundCheckRecord;
use crate::oracles::OracleReport;

/// A trial that could not be evaluated (generator or hypothesis error).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialError {
    pub suite: Suite,
    pub trial: u32,
    pub message: String,
}

/// Aggregate over all records of one statement or oracle.
#[derive(Debug, Clone, PartialEq)]
pub struct StatementSummary {
    pub count: usize,
    pub failures: usize,
    /// Smallest `rhs - lhs` for inequalities, largest gap for oracles.
    pub extreme: f64,
}

#[derive(Debug, Clone)]
pub struct Report {
    pub config: CampaignConfig,
    pub bounds: Vec<BoundCheckRecord>,
    pub oracles: Vec<OracleReport>,
    pub errors: Vec<TrialError>,
    pub workers: usize,
    pub wall_time_seconds: f64,
}

/// Finite floats as JSON numbers (shortest round-trip form), others as strings.
fn num(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else if x.is_nan() {
        json!("nan")
    } else if x > 0.0 {
        json!("inf")
    } else {
        json!("-inf")
    }
}

fn bound_key(r: &BoundCheckRecord) -> (String, Vec<String>, Vec<(String, u64)>, u64, u64) {
    (
        r.statement.clone(),
        r.inputs.clone(),
        r.params.iter().map(|(k, v)| (k.clone(), v.to_bits())).collect(),
        r.lhs.to_bits(),
        r.rhs.to_bits(),
    )
}

fn bound_json(r: &BoundCheckRecord) -> Value {
    let params: Map<String, Value> = r.params.iter().map(|(k, &v)| (k.clone(), num(v))).collect();
    json!({
        "statement": r.statement,
        "lhs": num(r.lhs),
        "rhs": num(r.rhs),
        "slack": num(r.slack),
        "pass": r.pass,
        "params": params,
        "inputs": r.inputs,
    })
}

fn oracle_json(r: &OracleReport) -> Value {
    json!({
        "oracle": r.oracle,
        "fingerprint": r.fingerprint,
        "fast": num(r.fast),
        "oracle_value": num(r.oracle_value),
        "abs_gap": num(r.abs_gap),
        "rel_gap": num(r.rel_gap),
        "tolerance": num(r.tolerance),
        "pass": r.pass,
    })
}

impl Report {
    pub(crate) fn assemble(config: CampaignConfig, outcomes: Vec<Outcome>) -> Self {
        let mut bounds = Vec::new();
        let mut oracles = Vec::new();
        let mut errors = Vec::new();
        for o in outcomes {
            bounds.extend(o.bounds);
            oracles.extend(o.oracles);
            errors.extend(o.errors);
        }
        bounds.sort_by_cached_key(bound_key);
        oracles.sort_by(|a, b| {
            (&a.oracle, &a.fingerprint, a.fast.to_bits(), a.oracle_value.to_bits()).cmp(&(
                &b.oracle,
                &b.fingerprint,
                b.fast.to_bits(),
                b.oracle_value.to_bits(),
            ))
        });
        errors.sort_by(|a, b| (a.suite, a.trial, &a.message).cmp(&(b.suite, b.trial, &b.message)));
        Report {
            config,
            bounds,
            oracles,
            errors,
            workers: 0,
            wall_time_seconds: 0.0,
        }
    }

    pub fn failures(&self) -> usize {
        self.bounds.iter().filter(|r| !r.pass).count()
            + self.oracles.iter().filter(|r| !r.pass).count()
            + self.errors.len()
    }

    pub fn passed(&self) -> bool {
        self.failures() == 0
    }

    /// Process exit code: `0` when everything passed, `1` otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    /// Per-statement counts and minimum slack.
    pub fn statement_summary(&self) -> BTreeMap<String, StatementSummary> {
        let mut out: BTreeMap<String, StatementSummary> = BTreeMap::new();
        for r in &self.bounds {
            let s = out.entry(r.statement.clone()).or_insert(StatementSummary {
                count: 0,
                failures: 0,
                extreme: f64::INFINITY,
            });
            s.count += 1;
            s.failures += usize::from(!r.pass);
            s.extreme = s.extreme.min(r.slack);
        }
        out
    }

    /// Per-oracle counts and maximum absolute gap.
    pub fn oracle_summary(&self) -> BTreeMap<String, StatementSummary> {
        let mut out: BTreeMap<String, StatementSummary> = BTreeMap::new();
        for r in &self.oracles {
            let s = out.entry(r.oracle.clone()).or_insert(StatementSummary {
                count: 0,
                failures: 0,
                extreme: 0.0,
            });
            s.count += 1;
            s.failures += usize::from(!r.pass);
            s.extreme = s.extreme.max(r.abs_gap);
        }
        out
    }

    /// Most negative slack among failing inequality records.
    pub fn max_violation(&self) -> Option<f64> {
        self.bounds
            .iter()
            .filter(|r| !r.pass)
            .map(|r| r.slack)
            .fold(None, |acc, s| Some(acc.map_or(s, |a: f64| a.min(s))))
    }

    /// One human-readable line per failing record or trial error.
    pub fn failure_lines(&self) -> Vec<String> {
        let mut lines = Vec::new();
        for r in self.bounds.iter().filter(|r| !r.pass) {
            lines.push(format!(
                "FAIL {} lhs={} rhs={} slack={} params={:?} inputs={}",
                r.statement,
                r.lhs,
                r.rhs,
                r.slack,
                r.params,
                r.inputs.join(",")
            ));
        }
        for r in self.oracles.iter().filter(|r| !r.pass) {
            lines.push(format!(
                "FAIL oracle {} fast={} oracle={} gap={} tol={} inputs={}",
                r.oracle, r.fast, r.oracle_value, r.abs_gap, r.tolerance, r.fingerprint
            ));
        }
        for e in &self.errors {
            lines.push(format!("ERROR {} trial {}: {}", e.suite, e.trial, e.message));
        }
        lines
    }

    /// The deterministic part of the report.
    pub fn body(&self) -> Value {
        let summarize = |m: BTreeMap<String, StatementSummary>, key: &str| -> Map<String, Value> {
            m.into_iter()
                .map(|(k, s)| {
                    (
                        k,
                        json!({"count": s.count, "failures": s.failures, key: num(s.extreme)}),
                    )
                })
                .collect()
        };
        let c = &self.config;
        json!({
            "version": env!("CARGO_PKG_VERSION"),
            "config": {
                "suite": c.suite.as_str(),
                "trials": c.trials,
                "seed": c.seed,
                "min_size": c.min_size,
                "max_size": c.max_size,
                "slack_tol": num(c.slack_tol),
            },
            "summary": {
                "bound_records": self.bounds.len(),
                "oracle_records": self.oracles.len(),
                "errors": self.errors.len(),
                "failures": self.failures(),
                "max_violation_slack": self.max_violation().map_or(Value::Null, num),
                "statements": summarize(self.statement_summary(), "min_slack"),
                "oracles": summarize(self.oracle_summary(), "max_abs_gap"),
            },
            "bounds": self.bounds.iter().map(bound_json).collect::<Vec<_>>(),
            "oracles": self.oracles.iter().map(oracle_json).collect::<Vec<_>>(),
            "errors": self.errors,
        })
    }

    /// Body serialized compactly; byte-identical for a fixed configuration.
    pub fn body_json(&self) -> String {
        serde_json::to_string(&self.body()).expect("values are serializable")
    }

    /// Full report: the body plus run metadata that may vary between runs.
    pub fn to_json(&self) -> String {
        let full = json!({
            "body": self.body(),
            "workers": self.workers,
            "wall_time_seconds": num(self.wall_time_seconds),
        });
        serde_json::to_string_pretty(&full).expect("values are serializable")
    }
}
