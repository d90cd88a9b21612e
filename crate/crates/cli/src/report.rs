//! Reports: a command name, the echoed configuration, per-check outcomes,
//! results, artifact paths and optional timings. JSON output has sorted
//! keys and canonical rationals, so a fixed configuration renders to the
//! same bytes when timings are off.

use std::fmt::Write as _;
use std::time::Instant;

use reltwist_core::verify::Check;
use serde_json::{json, Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Text,
}

pub struct Report {
    pub command: String,
    pub config: Map<String, Value>,
    pub checks: Vec<Check>,
    pub results: Map<String, Value>,
    pub artifacts: Vec<String>,
    pub timings: Vec<(String, f64)>,
    /// Failure that is not a check, such as a builder error.
    pub error: Option<String>,
    clock: Instant,
}

impl Report {
    pub fn new(command: &str, config: Map<String, Value>) -> Self {
        Self {
            command: command.into(),
            config,
            checks: Vec::new(),
            results: Map::new(),
            artifacts: Vec::new(),
            timings: Vec::new(),
            error: None,
            clock: Instant::now(),
        }
    }

    /// Close the current phase and record its wall time.
    pub fn lap(&mut self, phase: &str) {
        let now = Instant::now();
        self.timings.push((phase.into(), (now - self.clock).as_secs_f64() * 1e3));
        self.clock = now;
    }

    pub fn check(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn result(&mut self, key: &str, v: Value) {
        self.results.insert(key.into(), v);
    }

    pub fn passed(&self) -> bool {
        self.error.is_none() && self.checks.iter().all(Check::passed)
    }

    pub fn to_json(&self, timings: bool) -> Value {
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|c| {
                json!({
                    "name": c.name,
                    "status": if c.passed() { "pass" } else { "fail" },
                    "cases": c.cases,
                    "residual_terms": c.residual_terms,
                    "first_failure": c.first_failure,
                })
            })
            .collect();
        let mut v = json!({
            "command": self.command,
            "config": self.config,
            "status": if self.passed() { "pass" } else { "fail" },
            "checks": checks,
            "results": self.results,
            "artifacts": self.artifacts,
        });
        if let Some(e) = &self.error {
            v["error"] = json!(e);
        }
        if timings {
            let t: Map<String, Value> = self.timings.iter().map(|(k, ms)| (k.clone(), json!((ms * 1e3).round() / 1e3))).collect();
            v["timings_ms"] = Value::Object(t);
        }
        v
    }

    pub fn render(&self, format: Format, timings: bool) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.to_json(timings)).expect("serializable");
                s.push('\n');
                s
            }
            Format::Text => self.render_text(timings),
        }
    }

    fn render_text(&self, timings: bool) -> String {
        let mut s = String::new();
        let status = if self.passed() { "PASS" } else { "FAIL" };
        let _ = writeln!(s, "{} {status}", self.command);
        for (k, v) in &self.config {
            let _ = writeln!(s, "  {k} = {v}");
        }
        for c in &self.checks {
            let mark = if c.passed() { "PASS" } else { "FAIL" };
            let _ = write!(s, "{mark} {} (cases {}, residual terms {})", c.name, c.cases, c.residual_terms);
            if let Some(f) = &c.first_failure {
                let _ = write!(s, ": first failure {f}");
            }
            s.push('\n');
        }
        for (k, v) in &self.results {
            let _ = writeln!(s, "{k}: {v}");
        }
        for a in &self.artifacts {
            let _ = writeln!(s, "wrote {a}");
        }
        if let Some(e) = &self.error {
            let _ = writeln!(s, "error: {e}");
        }
        if timings {
            for (k, ms) in &self.timings {
                let _ = writeln!(s, "time {k}: {ms:.3} ms");
            }
        }
        s
    }
}
