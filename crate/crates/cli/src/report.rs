//! Run records: flat `key=value` lines or one JSON document.

use std::time::Duration;

use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use superhopf::report::Report;

/// Violations printed per check in text mode; JSON carries all of them.
const TEXT_VIOLATION_LIMIT: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Default)]
pub struct RunReport {
    pub command: String,
    pub input: Option<String>,
    pub digest: Option<String>,
    pub seed: Option<u64>,
    /// Command output (normal forms, monomial lists, tables), printed verbatim.
    pub output: Vec<String>,
    pub checks: Vec<Report>,
    pub error: Option<String>,
    pub elapsed: Option<Duration>,
}

pub fn digest(bytes: &[u8]) -> String {
    let hash = Sha256::digest(bytes);
    let hex: String = hash.iter().map(|b| format!("{b:02x}")).collect();
    format!("sha256:{hex}")
}

fn quote(s: &str) -> String {
    serde_json::to_string(s).expect("strings serialize")
}

impl RunReport {
    pub fn new(command: &str) -> Self {
        RunReport { command: command.into(), ..Default::default() }
    }

    pub fn status(&self) -> &'static str {
        if self.error.is_some() {
            "error"
        } else if self.checks.iter().all(|r| r.passed()) {
            "pass"
        } else {
            "fail"
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self.status() {
            "pass" => 0,
            "fail" => 1,
            _ => 2,
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.text(),
            Format::Json => serde_json::to_string_pretty(&self.json()).expect("json values serialize") + "\n",
        }
    }

    fn text(&self) -> String {
        let mut out = vec![format!("command={}", self.command)];
        if let Some(i) = &self.input {
            out.push(format!("input={i}"));
        }
        if let Some(d) = &self.digest {
            out.push(format!("digest={d}"));
        }
        if let Some(s) = self.seed {
            out.push(format!("seed={s}"));
        }
        out.extend(self.output.iter().cloned());
        for r in &self.checks {
            let status = if r.passed() { "pass" } else { "fail" };
            let mut line = format!("check={} status={status} checked={}", r.name, r.checked);
            if !r.passed() {
                line.push_str(&format!(" violations={}", r.violations.len()));
            }
            out.push(line);
            for v in r.violations.iter().take(TEXT_VIOLATION_LIMIT) {
                out.push(format!("violation check={}/{} witness={}", r.name, v.check, quote(&v.witness)));
            }
            if r.violations.len() > TEXT_VIOLATION_LIMIT {
                out.push(format!("violation check={} omitted={}", r.name, r.violations.len() - TEXT_VIOLATION_LIMIT));
            }
        }
        if let Some(e) = &self.error {
            out.push(format!("error={}", quote(e)));
        }
        out.push(format!("status={}", self.status()));
        if let Some(t) = self.elapsed {
            out.push(format!("elapsed_ms={}", t.as_millis()));
        }
        out.join("\n") + "\n"
    }

    fn json(&self) -> Value {
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|r| {
                json!({
                    "name": r.name,
                    "status": if r.passed() { "pass" } else { "fail" },
                    "checked": r.checked,
                    "violations": r.violations.iter().map(|v| json!({"check": v.check, "witness": v.witness})).collect::<Vec<_>>(),
                })
            })
            .collect();
        json!({
            "command": self.command,
            "input": self.input,
            "digest": self.digest,
            "seed": self.seed,
            "output": self.output,
            "checks": checks,
            "error": self.error,
            "status": self.status(),
            "elapsed_ms": self.elapsed.map(|t| t.as_millis() as u64),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_and_text() {
        let mut r = RunReport::new("demo");
        let mut rep = Report::new("axioms");
        rep.check(true, "jacobi", String::new);
        r.checks.push(rep.clone());
        assert_eq!(r.exit_code(), 0);
        rep.fail("jacobi", "a \"b\"");
        r.checks.push(rep);
        assert_eq!(r.exit_code(), 1);
        let t = r.render(Format::Text);
        assert!(t.contains("violation check=axioms/jacobi witness=\"a \\\"b\\\"\""));
        assert!(t.ends_with("status=fail\n"));
        r.error = Some("boom".into());
        assert_eq!(r.exit_code(), 2);
        let j: Value = serde_json::from_str(&r.render(Format::Json)).unwrap();
        assert_eq!(j["status"], "error");
    }

    #[test]
    fn digest_is_sha256() {
        assert_eq!(digest(b"abc"), "sha256:ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    }
}
