//! Scan reports shared by the library suites and the command line.

use serde::Serialize;

use crate::antisym::SpanReport;
use crate::vectorfields::CriticalScan;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Classification {
    Zero,
    Commutator,
    HigherOrder,
    Nonvanishing,
}

impl Classification {
    pub fn as_str(self) -> &'static str {
        match self {
            Classification::Zero => "zero",
            Classification::Commutator => "commutator",
            Classification::HigherOrder => "higher-order",
            Classification::Nonvanishing => "nonvanishing",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResultItem {
    pub item: usize,
    pub classification: Classification,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub closure: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Timing {
    pub item: usize,
    pub millis: f64,
}

/// Fields serialize in declaration order. Everything except `timing` is a
/// function of the inputs.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanReport {
    pub command: String,
    pub spec: String,
    pub parameters: serde_json::Map<String, serde_json::Value>,
    pub results: Vec<ResultItem>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nonvanishing: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub minimal_identity: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub timing: Vec<Timing>,
    pub version: String,
}

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

impl ScanReport {
    pub fn new(command: &str, spec: &str) -> ScanReport {
        ScanReport {
            command: command.into(),
            spec: spec.into(),
            parameters: serde_json::Map::new(),
            results: Vec::new(),
            nonvanishing: None,
            minimal_identity: None,
            note: None,
            timing: Vec::new(),
            version: VERSION.into(),
        }
    }

    pub fn parameter(mut self, key: &str, value: impl Into<serde_json::Value>) -> ScanReport {
        self.parameters.insert(key.into(), value.into());
        self
    }

    pub fn from_span(report: &SpanReport) -> ScanReport {
        let mut out = ScanReport::new("span", &report.spec).parameter("kMax", report.k_max);
        for i in &report.items {
            out.results.push(ResultItem {
                item: i.k,
                classification: if i.zero { Classification::Zero } else { Classification::Nonvanishing },
                order: None,
                closure: i.closure.map(|c| c.as_str().to_string()),
            });
            out.timing.push(Timing { item: i.k, millis: i.millis });
        }
        out.nonvanishing = Some(report.nonvanishing.clone());
        out.minimal_identity = report.minimal_identity;
        out
    }

    pub fn from_critical(scan: &CriticalScan) -> ScanReport {
        let mut out = ScanReport::new("vect-critical", &scan.spec).parameter("degree", scan.degree);
        out.note = Some(format!("at truncation degree {}", scan.degree));
        for i in &scan.items {
            out.results.push(ResultItem {
                item: i.n,
                classification: i.classification,
                order: i.order,
                closure: i.divergence_free.map(|d| if d { "divergence-free" } else { "not-divergence-free" }.to_string()),
            });
            out.timing.push(Timing { item: i.n, millis: i.millis });
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// JSON with the timing entries removed, for reproducibility checks.
    pub fn to_json_without_timing(&self) -> String {
        let mut copy = self.clone();
        copy.timing.clear();
        copy.to_json()
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.command, self.spec);
        for r in &self.results {
            s.push_str(&format!("  {:>3}  {}", r.item, r.classification.as_str()));
            if let Some(o) = r.order {
                s.push_str(&format!("  order {o}"));
            }
            if let Some(c) = &r.closure {
                s.push_str(&format!("  {c}"));
            }
            s.push('\n');
        }
        if let Some(nv) = &self.nonvanishing {
            s.push_str(&format!("nonvanishing: {nv:?}\n"));
        }
        if let Some(m) = self.minimal_identity {
            s.push_str(&format!("minimal identity: {m}\n"));
        }
        if let Some(n) = &self.note {
            s.push_str(&format!("{n}\n"));
        }
        s
    }
}
