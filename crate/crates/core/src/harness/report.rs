use std::fmt::Write as _;

use serde::Serialize;

/// Outcome of one row or of a whole experiment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    /// Failure anticipated because the weight function is not restricted.
    ExpectedFail,
    Skipped,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::ExpectedFail => "expected-fail",
            Status::Skipped => "skipped",
        }
    }

    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Cell {
    Text(String),
    Int(i64),
    Real(f64),
}

impl Cell {
    pub fn text(s: impl Into<String>) -> Self {
        Cell::Text(s.into())
    }

    pub fn int(v: usize) -> Self {
        Cell::Int(v as i64)
    }

    fn csv(&self) -> String {
        match self {
            Cell::Text(s) if s.contains([',', '"', '\n']) => {
                format!("\"{}\"", s.replace('"', "\"\""))
            }
            Cell::Text(s) => s.clone(),
            Cell::Int(v) => v.to_string(),
            Cell::Real(v) => format_significant(*v, 6),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Row {
    pub label: String,
    pub cells: Vec<Cell>,
    pub status: Status,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub verdict: Status,
    pub first_counterexample: Option<String>,
    pub stats: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentReport {
    pub experiment: String,
    pub params: Vec<(String, String)>,
    pub columns: Vec<String>,
    pub rows: Vec<Row>,
    pub summary: Summary,
}

impl ExperimentReport {
    pub(crate) fn new(experiment: &str, params: Vec<(String, String)>, columns: &[&str]) -> Self {
        Self {
            experiment: experiment.to_string(),
            params,
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
            summary: Summary {
                verdict: Status::Pass,
                first_counterexample: None,
                stats: Vec::new(),
            },
        }
    }

    pub(crate) fn push(&mut self, label: impl Into<String>, cells: Vec<Cell>, status: Status) {
        debug_assert_eq!(cells.len(), self.columns.len());
        self.rows.push(Row {
            label: label.into(),
            cells,
            status,
        });
    }

    pub(crate) fn stat(&mut self, key: &str, value: impl ToString) {
        self.summary
            .stats
            .push((key.to_string(), value.to_string()));
    }

    /// Folds row statuses into the summary. Failures become expected when
    /// `failure_expected` holds.
    pub(crate) fn finish(&mut self, failure_expected: bool) {
        let first = self.rows.iter().find(|r| r.status == Status::Fail);
        self.summary.first_counterexample = first.map(|r| r.label.clone());
        self.summary.verdict = match (first.is_some(), failure_expected) {
            (false, _) => Status::Pass,
            (true, false) => Status::Fail,
            (true, true) => {
                for r in &mut self.rows {
                    if r.status == Status::Fail {
                        r.status = Status::ExpectedFail;
                    }
                }
                Status::ExpectedFail
            }
        };
    }

    pub fn passed(&self) -> bool {
        self.summary.verdict == Status::Pass
    }

    /// True unless some failure was not anticipated.
    pub fn acceptable(&self) -> bool {
        self.summary.verdict != Status::Fail
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let header: Vec<&str> = std::iter::once("label")
            .chain(self.columns.iter().map(String::as_str))
            .chain(std::iter::once("verdict"))
            .collect();
        writeln!(out, "{}", header.join(",")).expect("write to string");
        for row in &self.rows {
            let mut fields = vec![Cell::Text(row.label.clone()).csv()];
            fields.extend(row.cells.iter().map(Cell::csv));
            fields.push(row.status.as_str().to_string());
            writeln!(out, "{}", fields.join(",")).expect("write to string");
        }
        writeln!(out, "# experiment: {}", self.experiment).expect("write to string");
        for (k, v) in self.params.iter().chain(&self.summary.stats) {
            writeln!(out, "# {k}: {v}").expect("write to string");
        }
        if let Some(c) = &self.summary.first_counterexample {
            writeln!(out, "# first counterexample: {c}").expect("write to string");
        }
        writeln!(out, "# verdict: {}", self.summary.verdict.as_str()).expect("write to string");
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One-line summary for terminals.
    pub fn summary_line(&self) -> String {
        let mut s = format!("{}: {}", self.experiment, self.summary.verdict.as_str());
        for (k, v) in &self.summary.stats {
            write!(s, ", {k}={v}").expect("write to string");
        }
        if let Some(c) = &self.summary.first_counterexample {
            write!(s, ", first counterexample {c}").expect("write to string");
        }
        s
    }
}

/// `%g`-style formatting with `sig` significant digits.
pub fn format_significant(x: f64, sig: usize) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sig = sig.max(1);
    let sci = format!("{:.*e}", sig - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= sig as i32 {
        let m = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{m}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (sig as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}
