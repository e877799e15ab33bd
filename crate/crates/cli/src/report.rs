use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

use serde::Serialize;
use serde_json::{json, Value};

use crate::config::RunConfig;
use crate::CliError;

pub const SCHEMA: &str = "qjoin.report/1";

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub suite: String,
    pub name: String,
    pub passed: bool,
    pub detail: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Value>,
}

impl Check {
    pub fn new(suite: &str, name: impl Into<String>, passed: bool, detail: Value) -> Self {
        Check { suite: suite.into(), name: name.into(), passed, detail, counterexample: None }
    }

    pub fn with_counterexample(mut self, c: Option<Value>) -> Self {
        self.counterexample = c;
        self
    }

    /// A check that could not run; reported as a failure.
    pub fn error(suite: &str, name: impl Into<String>, err: impl std::fmt::Display) -> Self {
        Check::new(suite, name, false, json!({ "error": err.to_string() }))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub config: RunConfig,
    pub checks: Vec<Check>,
    /// Wall-clock seconds per suite. Kept out of the JSON so reports stay
    /// byte-identical across runs.
    pub timings: BTreeMap<String, f64>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn to_json(&self) -> Value {
        let failed = self.failures().count();
        json!({
            "schema": SCHEMA,
            "tool": "qjoin",
            "version": env!("CARGO_PKG_VERSION"),
            "suite": self.config.suite,
            "config": self.config,
            "summary": {
                "checks": self.checks.len(),
                "failed": failed,
                "passed": failed == 0,
            },
            "checks": self.checks,
        })
    }

    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("plain data");
        s.push('\n');
        s
    }
}

/// One line per check, then `OK (k checks)` or the failure count followed
/// by the first counterexample.
pub fn render_text(report: &Report, timings: bool) -> Result<String, CliError> {
    if report.checks.is_empty() {
        return Err(CliError::NoChecks);
    }
    let mut out = String::new();
    for c in &report.checks {
        let tag = if c.passed { "PASS" } else { "FAIL" };
        let _ = writeln!(out, "[{tag}] {}/{}", c.suite, c.name);
    }
    if timings {
        for (suite, secs) in &report.timings {
            let _ = writeln!(out, "time {suite}: {secs:.3}s");
        }
    }
    let total = report.checks.len();
    match report.failures().next() {
        None => {
            let _ = writeln!(out, "OK ({total} checks)");
        }
        Some(first) => {
            let failed = report.failures().count();
            let _ = writeln!(out, "FAILED ({failed} of {total} checks)");
            let shown = first.counterexample.as_ref().unwrap_or(&first.detail);
            let _ = writeln!(out, "first counterexample ({}/{}): {}", first.suite, first.name, shown);
        }
    }
    Ok(out)
}

/// Writes `contents` to a temporary file next to `path` and renames it
/// into place.
pub fn write_json_atomic(path: &Path, contents: &str) -> Result<(), CliError> {
    let io = |source| CliError::Io { path: path.display().to_string(), source };
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(contents.as_bytes()).map_err(io)?;
    tmp.flush().map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Suite;

    fn report(checks: Vec<Check>) -> Report {
        Report { config: RunConfig::new(Suite::Hopf), checks, timings: BTreeMap::new() }
    }

    #[test]
    fn all_pass_summary() {
        let r = report(vec![Check::new("hopf", "a", true, json!(null)), Check::new("hopf", "b", true, json!(1))]);
        let text = render_text(&r, false).unwrap();
        assert!(text.ends_with("OK (2 checks)\n"), "{text}");
    }

    #[test]
    fn failing_summary_shows_counterexample() {
        let cx = json!({"x": {"algebra": "SUq2", "terms": []}});
        let r = report(vec![
            Check::new("hopf", "a", true, json!(null)),
            Check::new("hopf", "b", false, json!(null)).with_counterexample(Some(cx.clone())),
        ]);
        let text = render_text(&r, false).unwrap();
        assert!(text.contains("FAILED (1 of 2 checks)"));
        assert!(text.contains(&cx.to_string()));
    }

    #[test]
    fn empty_report_is_an_error() {
        let err = render_text(&report(vec![]), false).unwrap_err();
        assert_eq!(err.to_string(), "no checks selected");
    }

    #[test]
    fn json_has_schema_and_config() {
        let r = report(vec![Check::new("hopf", "a", true, json!(null))]);
        let v = r.to_json();
        assert_eq!(v["schema"], SCHEMA);
        assert_eq!(v["config"]["seed"], 7);
        assert_eq!(v["summary"]["passed"], true);
        assert!(v.get("timings").is_none());
    }

    #[test]
    fn atomic_write_replaces_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("r.json");
        write_json_atomic(&path, "first").unwrap();
        write_json_atomic(&path, "second").unwrap();
        assert_eq!(std::fs::read_to_string(&path).unwrap(), "second");
        let bad = dir.path().join("missing").join("r.json");
        assert!(matches!(write_json_atomic(&bad, "x"), Err(CliError::Io { .. })));
    }
}
