//! Deterministic report assembly. One builder feeds both renderings: a
//! structured text form for terminals and a version-tagged JSON form. All
//! content is derived from the input bytes and the flags, never from clocks
//! or machine state, so repeated runs are byte-identical. Timing is the one
//! exception and goes to standard error, not into the report.

use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

pub const REPORT_FORMAT: &str = "pvforge-report/1";

/// The split-over-the-rationals caveat carried by every scalar-field
/// computation: constant matrices are solved over Q, so a group that only
/// splits over an extension may under-report its dimension.
pub const SPLIT_CAVEAT: &str =
    "split-over-Q assumed: scalar solutions are computed over Q, so a non-Q-split group \
     may under-report dimension";

#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: Option<String>,
}

pub struct Report {
    subcommand: &'static str,
    digest: String,
    order: Option<usize>,
    orders: Option<(usize, usize)>,
    caveats: Vec<String>,
    lines: Vec<String>,
    payload: Value,
    checks: Vec<Check>,
    summary: Option<String>,
}

#[derive(Serialize)]
struct JsonCheck<'a> {
    name: &'a str,
    passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    detail: &'a Option<String>,
}

#[derive(Serialize)]
struct JsonReport<'a> {
    format: &'static str,
    subcommand: &'static str,
    input_digest: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    order: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    orders: Option<[usize; 2]>,
    caveats: &'a [String],
    payload: &'a Value,
    checks: Vec<JsonCheck<'a>>,
    passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    summary: &'a Option<String>,
}

impl Report {
    pub fn new(subcommand: &'static str, input: &[u8]) -> Self {
        let digest = format!("sha256:{}", hex::encode(Sha256::digest(input)));
        Report {
            subcommand,
            digest,
            order: None,
            orders: None,
            caveats: Vec::new(),
            lines: Vec::new(),
            payload: json!({}),
            checks: Vec::new(),
            summary: None,
        }
    }

    pub fn order(&mut self, order: usize) -> &mut Self {
        self.order = Some(order);
        self
    }

    pub fn orders(&mut self, low: usize, high: usize) -> &mut Self {
        self.orders = Some((low, high));
        self
    }

    pub fn caveat(&mut self, text: impl Into<String>) -> &mut Self {
        self.caveats.push(text.into());
        self
    }

    /// A payload line for the text rendering.
    pub fn line(&mut self, text: impl Into<String>) -> &mut Self {
        self.lines.push(text.into());
        self
    }

    /// The subcommand-specific payload for the JSON rendering. Maps render
    /// with sorted keys, so the output is deterministic.
    pub fn payload(&mut self, value: Value) -> &mut Self {
        self.payload = value;
        self
    }

    pub fn check(&mut self, name: &str, passed: bool, detail: Option<String>) -> &mut Self {
        self.checks.push(Check {
            name: name.to_string(),
            passed,
            detail,
        });
        self
    }

    pub fn summary(&mut self, text: impl Into<String>) -> &mut Self {
        self.summary = Some(text.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn render(&self, json: bool) -> String {
        if json {
            self.render_json()
        } else {
            self.render_text()
        }
    }

    fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(REPORT_FORMAT);
        out.push('\n');
        out.push_str(&format!("subcommand: {}\n", self.subcommand));
        out.push_str(&format!("input-digest: {}\n", self.digest));
        if let Some(order) = self.order {
            out.push_str(&format!("order: {order}\n"));
        }
        if let Some((low, high)) = self.orders {
            out.push_str(&format!("orders: {low} and {high}\n"));
        }
        for caveat in &self.caveats {
            out.push_str(&format!("caveat: {caveat}\n"));
        }
        for line in &self.lines {
            out.push_str(line);
            out.push('\n');
        }
        for check in &self.checks {
            let status = if check.passed { "pass" } else { "fail" };
            match &check.detail {
                Some(d) => out.push_str(&format!("check {}: {status} — {d}\n", check.name)),
                None => out.push_str(&format!("check {}: {status}\n", check.name)),
            }
        }
        let verdict = if self.passed() { "pass" } else { "fail" };
        match &self.summary {
            Some(s) => out.push_str(&format!("result: {verdict} — {s}\n")),
            None => out.push_str(&format!("result: {verdict}\n")),
        }
        out
    }

    fn render_json(&self) -> String {
        let report = JsonReport {
            format: REPORT_FORMAT,
            subcommand: self.subcommand,
            input_digest: &self.digest,
            order: self.order,
            orders: self.orders.map(|(a, b)| [a, b]),
            caveats: &self.caveats,
            payload: &self.payload,
            checks: self
                .checks
                .iter()
                .map(|c| JsonCheck {
                    name: &c.name,
                    passed: c.passed,
                    detail: &c.detail,
                })
                .collect(),
            passed: self.passed(),
            summary: &self.summary,
        };
        let mut text = serde_json::to_string_pretty(&report).expect("report serializes");
        text.push('\n');
        text
    }
}
