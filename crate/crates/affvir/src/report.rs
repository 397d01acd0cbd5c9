//! JSON reports: `{command, config, checks, summary}`.

use serde::Serialize;
use serde_json::{Map, Value};

use crate::config::JobConfig;

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub inputs: Value,
    pub expected: Value,
    pub actual: Value,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub config: JobConfig,
    pub checks: Vec<Check>,
    pub summary: Map<String, Value>,
}

impl Report {
    pub fn new(command: String, config: JobConfig, checks: Vec<Check>, results: Map<String, Value>) -> Report {
        let passed = checks.iter().filter(|c| c.pass).count();
        let mut summary = Map::new();
        summary.insert("total".into(), checks.len().into());
        summary.insert("passed".into(), passed.into());
        summary.insert("failed".into(), (checks.len() - passed).into());
        summary.extend(results);
        Report { command, config, checks, summary }
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}

/// Collects checks and result fields while a command runs.
#[derive(Default)]
pub struct Builder {
    pub checks: Vec<Check>,
    pub results: Map<String, Value>,
}

impl Builder {
    pub fn check(&mut self, name: impl Into<String>, inputs: Value, expected: impl Into<Value>, actual: impl Into<Value>, pass: bool) {
        self.checks.push(Check { name: name.into(), inputs, expected: expected.into(), actual: actual.into(), pass });
    }

    /// A check whose pass condition is `expected == actual`.
    pub fn check_eq<T: Into<Value> + PartialEq + Clone>(&mut self, name: impl Into<String>, inputs: Value, expected: T, actual: T) {
        let pass = expected == actual;
        self.check(name, inputs, expected, actual, pass);
    }

    pub fn result(&mut self, key: &str, value: impl Into<Value>) {
        self.results.insert(key.into(), value.into());
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn summary_counts_and_results() {
        let mut b = Builder::default();
        b.check_eq("a", json!(null), 1, 1);
        b.check_eq("b", json!(null), 1, 2);
        b.result("R_g", 3);
        let r = Report::new("rg".into(), JobConfig::default(), b.checks, b.results);
        assert!(!r.all_pass());
        assert_eq!(r.summary["total"], 2);
        assert_eq!(r.summary["failed"], 1);
        assert_eq!(r.summary["R_g"], 3);
        assert!(r.to_json().ends_with("}\n"));
    }
}
