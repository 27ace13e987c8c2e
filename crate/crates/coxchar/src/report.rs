//! Verification reports and their text and machine renderings.
//!
//! The machine format has one JSON object per line and per identity.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use coxeter_core::ClassFunction;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        }
    }
}

/// A class where an identity fails, as `label:expected:got`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct Diff {
    pub class: String,
    pub expected: String,
    pub got: String,
}

impl From<Diff> for String {
    fn from(d: Diff) -> String {
        format!("{}:{}:{}", d.class, d.expected, d.got)
    }
}

impl TryFrom<String> for Diff {
    type Error = String;
    fn try_from(s: String) -> Result<Self, String> {
        // Cyclotomic literals never contain ':'.
        let mut it = s.splitn(3, ':');
        match (it.next(), it.next(), it.next()) {
            (Some(c), Some(e), Some(g)) => Ok(Diff { class: c.into(), expected: e.into(), got: g.into() }),
            _ => Err(format!("malformed diff {s:?}")),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Record {
    pub group: String,
    #[serde(rename = "L")]
    pub subset: String,
    pub identity: String,
    pub status: Status,
    pub diffs: Vec<Diff>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    /// Wall-clock seconds; kept out of the machine format so reports are
    /// reproducible.
    #[serde(skip)]
    pub seconds: Option<f64>,
}

/// Equality ignores timing.
impl PartialEq for Record {
    fn eq(&self, other: &Self) -> bool {
        (&self.group, &self.subset, &self.identity, self.status, &self.diffs, &self.detail)
            == (&other.group, &other.subset, &other.identity, other.status, &other.diffs, &other.detail)
    }
}

impl Eq for Record {}

impl Record {
    /// Compares two class functions classwise, restricted to `classes` if
    /// given.
    pub fn compare(
        group: &str,
        subset: &str,
        identity: &str,
        labels: &[String],
        expected: &ClassFunction,
        got: &ClassFunction,
        classes: Option<&[usize]>,
    ) -> Record {
        let all: Vec<usize> = (0..expected.len()).collect();
        let diffs: Vec<Diff> = classes
            .unwrap_or(&all)
            .iter()
            .filter(|&&k| expected.value(k) != got.value(k))
            .map(|&k| Diff { class: labels[k].clone(), expected: expected.value(k).to_string(), got: got.value(k).to_string() })
            .collect();
        let status = if diffs.is_empty() { Status::Pass } else { Status::Fail };
        let detail = classes.map(|c| format!("checked {} of {} classes", c.len(), expected.len()));
        Record { group: group.into(), subset: subset.into(), identity: identity.into(), status, diffs, detail, seconds: None }
    }

    pub fn failure(group: &str, subset: &str, identity: &str, detail: String) -> Record {
        Record {
            group: group.into(),
            subset: subset.into(),
            identity: identity.into(),
            status: Status::Fail,
            diffs: Vec::new(),
            detail: Some(detail),
            seconds: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    pub records: Vec<Record>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Machine,
}

impl Report {
    pub fn all_pass(&self) -> bool {
        self.records.iter().all(Record::passed)
    }

    pub fn exit_code(&self) -> i32 {
        if self.all_pass() {
            0
        } else {
            1
        }
    }

    pub fn extend(&mut self, other: Report) {
        self.records.extend(other.records);
    }

    pub fn render(&self, format: Format, timing: bool) -> String {
        match format {
            Format::Text => self.render_text(timing),
            Format::Machine => self.render_machine(),
        }
    }

    pub fn render_text(&self, timing: bool) -> String {
        let mut out = String::new();
        for r in &self.records {
            let _ = write!(out, "{:<4} {:<16} {:<10} {}", r.group, r.subset, r.identity, r.status.as_str());
            if let Some(d) = &r.detail {
                let _ = write!(out, "  ({d})");
            }
            if let (true, Some(s)) = (timing, r.seconds) {
                let _ = write!(out, "  [{s:.2}s]");
            }
            out.push('\n');
            if !r.diffs.is_empty() {
                let w = r.diffs.iter().map(|d| d.class.len()).max().unwrap_or(0).max(5);
                let we = r.diffs.iter().map(|d| d.expected.len()).max().unwrap_or(0).max(8);
                let _ = writeln!(out, "    {:<w$}  {:<we$}  got", "class", "expected");
                for d in &r.diffs {
                    let _ = writeln!(out, "    {:<w$}  {:<we$}  {}", d.class, d.expected, d.got);
                }
            }
        }
        let passed = self.records.iter().filter(|r| r.passed()).count();
        let _ = writeln!(out, "{passed}/{} identities passed", self.records.len());
        out
    }

    pub fn render_machine(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            out.push_str(&serde_json::to_string(r).expect("records serialize"));
            out.push('\n');
        }
        out
    }

    pub fn parse_machine(text: &str) -> Result<Report, serde_json::Error> {
        let records = text.lines().filter(|l| !l.trim().is_empty()).map(serde_json::from_str).collect::<Result<_, _>>()?;
        Ok(Report { records })
    }
}
