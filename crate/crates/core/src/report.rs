//! Line-oriented reports.
//!
//! A report is a header plus zero or more findings; each finding serializes
//! to one `key=value` line. Findings and their fields are kept in insertion
//! order by the producing check, which is itself deterministic, so identical
//! inputs yield identical bytes.

use crate::value::V;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Finding {
    pub kind: String,
    pub fields: Vec<(String, String)>,
}

impl Finding {
    pub fn new(kind: &str) -> Finding {
        Finding { kind: kind.to_string(), fields: Vec::new() }
    }

    pub fn with(mut self, key: &str, value: impl FieldValue) -> Finding {
        self.fields.push((key.to_string(), value.render()));
        self
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.fields.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }
}

pub trait FieldValue {
    fn render(&self) -> String;
}

impl FieldValue for &V {
    fn render(&self) -> String {
        self.to_string()
    }
}

impl FieldValue for &str {
    fn render(&self) -> String {
        self.to_string()
    }
}

impl FieldValue for String {
    fn render(&self) -> String {
        self.clone()
    }
}

impl FieldValue for i64 {
    fn render(&self) -> String {
        self.to_string()
    }
}

impl FieldValue for usize {
    fn render(&self) -> String {
        self.to_string()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub subject: String,
    pub notes: Vec<(String, String)>,
    pub findings: Vec<Finding>,
}

impl Report {
    pub fn new(subject: &str) -> Report {
        Report { subject: subject.to_string(), notes: Vec::new(), findings: Vec::new() }
    }

    pub fn note(&mut self, key: &str, value: impl FieldValue) {
        self.notes.push((key.to_string(), value.render()));
    }

    pub fn push(&mut self, finding: Finding) {
        self.findings.push(finding);
    }

    pub fn absorb(&mut self, other: Report) {
        self.findings.extend(other.findings);
    }

    pub fn is_empty(&self) -> bool {
        self.findings.is_empty()
    }

    /// Stable byte serialization: header, notes, one finding per line.
    pub fn emit(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("report subject={}\n", self.subject));
        for (k, v) in &self.notes {
            out.push_str(&format!("note {k}={v}\n"));
        }
        out.push_str(&format!("findings: {}\n", self.findings.len()));
        for f in &self.findings {
            out.push_str(&format!("finding kind={}", f.kind));
            for (k, v) in &f.fields {
                out.push_str(&format!(" {k}={v}"));
            }
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.emit())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_report_emits_header_and_count() {
        let r = Report::new("demo");
        assert_eq!(r.emit(), "report subject=demo\nfindings: 0\n");
    }

    #[test]
    fn emission_is_deterministic() {
        let mut r = Report::new("demo");
        r.note("budget", "3,3,4");
        r.push(Finding::new("violation").with("cell", "p").with("pos", 2usize));
        assert_eq!(r.emit(), r.clone().emit());
        assert!(r.emit().contains("finding kind=violation cell=p pos=2"));
    }
}
