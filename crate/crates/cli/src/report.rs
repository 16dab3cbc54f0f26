//! Check records, report assembly and emission.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRecord {
    pub id: String,
    /// Human-readable statement of the claim being checked.
    pub anchor: String,
    pub inputs: Value,
    pub expected: Value,
    pub computed: Value,
    pub pass: bool,
}

impl CheckRecord {
    pub fn section(&self) -> &str {
        self.id.split('/').next().unwrap_or("")
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Counts {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

impl Counts {
    fn add(&mut self, pass: bool) {
        self.total += 1;
        if pass {
            self.passed += 1;
        } else {
            self.failed += 1;
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    #[serde(flatten)]
    pub counts: Counts,
    pub sections: BTreeMap<String, Counts>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub tool_version: String,
    pub config: Value,
    pub checks: Vec<CheckRecord>,
    pub summary: Summary,
}

impl Report {
    /// Sorts the checks by id and recomputes the summary.
    pub fn new(config: Value, mut checks: Vec<CheckRecord>) -> Self {
        checks.sort_by(|a, b| a.id.cmp(&b.id));
        let mut summary = Summary::default();
        for c in &checks {
            summary.counts.add(c.pass);
            summary.sections.entry(c.section().to_string()).or_default().add(c.pass);
        }
        Report { tool_version: env!("CARGO_PKG_VERSION").to_string(), config, checks, summary }
    }

    pub fn all_pass(&self) -> bool {
        self.summary.counts.failed == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Text,
}

/// Converting through `Value` sorts every object's keys.
pub fn to_json<T: Serialize>(v: &T) -> String {
    let value = serde_json::to_value(v).expect("report values serialize");
    let mut s = serde_json::to_string_pretty(&value).expect("json values print");
    s.push('\n');
    s
}

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

pub fn emit_report(report: &Report, format: Format) -> Vec<u8> {
    match format {
        Format::Json => to_json(report).into_bytes(),
        Format::Text => {
            let width = report.checks.iter().map(|c| c.id.len()).max().unwrap_or(2).max(2);
            let mut out = format!("lieext {}\n", report.tool_version);
            out += &format!("{:<width$}  {:<4}  {:<24}  {}\n", "id", "ok", "expected", "computed");
            for c in &report.checks {
                let ok = if c.pass { "pass" } else { "FAIL" };
                out += &format!(
                    "{:<width$}  {:<4}  {:<24}  {}\n",
                    c.id,
                    ok,
                    compact(&c.expected),
                    compact(&c.computed)
                );
            }
            out += "\nsection counts:\n";
            for (s, n) in &report.summary.sections {
                out += &format!("  {s}: {}/{} passed\n", n.passed, n.total);
            }
            let t = &report.summary.counts;
            out += &format!("total: {} checks, {} passed, {} failed\n", t.total, t.passed, t.failed);
            out.into_bytes()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn rec(id: &str, pass: bool) -> CheckRecord {
        CheckRecord {
            id: id.into(),
            anchor: "a claim".into(),
            inputs: json!({"n": 5}),
            expected: json!("1"),
            computed: json!("1"),
            pass,
        }
    }

    #[test]
    fn empty_report_is_valid_json() {
        let r = Report::new(json!({}), vec![]);
        let s = String::from_utf8(emit_report(&r, Format::Json)).unwrap();
        let v: Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["summary"]["total"], 0);
        assert!(v["checks"].as_array().unwrap().is_empty());
    }

    #[test]
    fn single_pass_record() {
        let r = Report::new(json!({}), vec![rec("x/1", true)]);
        let v: Value = serde_json::from_slice(&emit_report(&r, Format::Json)).unwrap();
        assert_eq!(v["checks"][0]["pass"], true);
        assert_eq!(v["checks"][0]["anchor"], "a claim");
        assert!(r.all_pass());
    }

    #[test]
    fn keys_sorted_and_checks_ordered() {
        let r = Report::new(json!({"z": 1, "a": 2}), vec![rec("b/2", false), rec("a/1", true)]);
        let s = String::from_utf8(emit_report(&r, Format::Json)).unwrap();
        assert!(s.find("\"a\"").unwrap() < s.find("\"z\"").unwrap());
        assert!(s.find("\"checks\"").unwrap() < s.find("\"config\"").unwrap());
        assert_eq!(r.checks[0].id, "a/1");
        assert_eq!(r.summary.sections["b"].failed, 1);
        let text = String::from_utf8(emit_report(&r, Format::Text)).unwrap();
        assert!(text.contains("FAIL"));
    }
}
