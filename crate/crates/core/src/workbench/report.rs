//! Suite reports and their two renderings.
//!
//! Text, one record per check followed by its witness lines, then a summary:
//!
//! ```text
//! suite=<suite> check=<id> status=<pass|fail|skipped-budget> params=<k=v,...>
//!   witness: <dsl line>
//! summary suite=<suite> pass=<p> fail=<f> skipped=<s>
//! ```
//!
//! Records (`--format records`) carry the same fields as one JSON object per
//! line, keys in the order shown above, and end with a summary object.

use std::fmt::Write as _;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Status {
    #[serde(rename = "pass")]
    Pass,
    #[serde(rename = "fail")]
    Fail,
    #[serde(rename = "skipped-budget")]
    SkippedBudget,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::SkippedBudget => "skipped-budget",
        }
    }

    pub fn from_bool(ok: bool) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Record {
    pub suite: String,
    pub check: String,
    pub status: Status,
    /// Ordered `key=value` pairs.
    pub params: Vec<(String, String)>,
    /// DSL lines reproducing the failure; empty unless `status` is `fail`.
    pub witness: Vec<String>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: String,
    pub records: Vec<Record>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    #[value(alias = "json", alias = "json-like-records")]
    Records,
}

impl SuiteReport {
    pub fn new(suite: &str) -> SuiteReport {
        SuiteReport {
            suite: suite.to_string(),
            records: Vec::new(),
        }
    }

    pub fn push(&mut self, check: impl Into<String>, status: Status, params: Vec<(String, String)>, witness: Vec<String>) {
        let witness = if status == Status::Fail { witness } else { Vec::new() };
        self.records.push(Record {
            suite: self.suite.clone(),
            check: check.into(),
            status,
            params,
            witness,
        });
    }

    pub fn summary(&self) -> Summary {
        let mut s = Summary::default();
        for r in &self.records {
            match r.status {
                Status::Pass => s.pass += 1,
                Status::Fail => s.fail += 1,
                Status::SkippedBudget => s.skipped += 1,
            }
        }
        s
    }

    pub fn all_pass(&self) -> bool {
        self.summary().fail == 0
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.to_text(),
            Format::Records => self.to_records(),
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            let params: Vec<String> = r.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
            let _ = writeln!(
                out,
                "suite={} check={} status={} params={}",
                r.suite,
                r.check,
                r.status.as_str(),
                params.join(",")
            );
            for w in &r.witness {
                let _ = writeln!(out, "  witness: {w}");
            }
        }
        let s = self.summary();
        let _ = writeln!(
            out,
            "summary suite={} pass={} fail={} skipped={}",
            self.suite, s.pass, s.fail, s.skipped
        );
        out
    }

    pub fn to_records(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            let params: Vec<String> = r
                .params
                .iter()
                .map(|(k, v)| format!("{}:{}", json(k), json(v)))
                .collect();
            let _ = writeln!(
                out,
                "{{\"suite\":{},\"check\":{},\"status\":{},\"params\":{},\"witness\":{}}}",
                json(&r.suite),
                json(&r.check),
                json(&r.status),
                format!("{{{}}}", params.join(",")),
                json(&r.witness)
            );
        }
        let s = self.summary();
        let _ = writeln!(
            out,
            "{{\"summary\":{},\"pass\":{},\"fail\":{},\"skipped\":{}}}",
            json(&self.suite),
            s.pass,
            s.fail,
            s.skipped
        );
        out
    }
}

fn json<T: Serialize + ?Sized>(v: &T) -> String {
    serde_json::to_string(v).expect("serializable")
}

/// `[("k", v), ...]` to owned params.
pub fn params<const N: usize>(pairs: [(&str, String); N]) -> Vec<(String, String)> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}
