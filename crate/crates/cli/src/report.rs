//! Serializable reports and their text, JSON and CSV renderings.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

/// Result of `eval`. Rationals are carried as `p/q` strings and floats as
/// decimal strings, so nothing is lost to binary64.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub scheme: String,
    pub params: BTreeMap<String, String>,
    /// `rational` or `float`.
    pub backend: String,
    /// Working precision in bits; absent for the rational backend.
    pub precision: Option<u32>,
    /// Significant digits requested for the decimals below.
    pub digits: u32,
    pub terms: u64,
    pub targets: Vec<TargetReport>,
    /// `|alpha_1 ... alpha_p|`.
    pub alpha_prefix: String,
    /// Upper-left block of the truncated product, first row on top.
    pub a_block: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TargetReport {
    /// 1-based, matching `targetN` in scheme files.
    pub index: usize,
    pub descriptor: String,
    pub decimal: String,
    /// The exact value when the backend is rational.
    pub exact: Option<String>,
    pub oracle: String,
    pub matched_digits: f64,
    pub estimated_digits: f64,
}

/// Flat CSV form of an [`EvalReport`], one row per target.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
struct EvalRow {
    scheme: String,
    params: String,
    backend: String,
    precision: Option<u32>,
    digits: u32,
    terms: u64,
    index: usize,
    descriptor: String,
    decimal: String,
    exact: Option<String>,
    oracle: String,
    matched_digits: f64,
    estimated_digits: f64,
    alpha_prefix: String,
    a_block: String,
}

/// Column names of `eval --format csv`.
pub const EVAL_CSV_HEADER: &str = "scheme,params,backend,precision,digits,terms,index,descriptor,decimal,exact,oracle,matched_digits,estimated_digits,alpha_prefix,a_block";

fn join_params(p: &BTreeMap<String, String>) -> String {
    p.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(";")
}

fn split_params(s: &str) -> Result<BTreeMap<String, String>, String> {
    if s.is_empty() {
        return Ok(BTreeMap::new());
    }
    s.split(';')
        .map(|kv| {
            kv.split_once('=')
                .map(|(k, v)| (k.to_string(), v.to_string()))
                .ok_or_else(|| format!("bad params cell {s:?}"))
        })
        .collect()
}

fn join_block(rows: &[Vec<String>]) -> String {
    rows.iter().map(|r| r.join(" ")).collect::<Vec<_>>().join(";")
}

fn split_block(s: &str) -> Vec<Vec<String>> {
    s.split(';')
        .map(|r| r.split(' ').map(str::to_string).collect())
        .collect()
}

impl EvalReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<EvalReport, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        for t in &self.targets {
            w.serialize(EvalRow {
                scheme: self.scheme.clone(),
                params: join_params(&self.params),
                backend: self.backend.clone(),
                precision: self.precision,
                digits: self.digits,
                terms: self.terms,
                index: t.index,
                descriptor: t.descriptor.clone(),
                decimal: t.decimal.clone(),
                exact: t.exact.clone(),
                oracle: t.oracle.clone(),
                matched_digits: t.matched_digits,
                estimated_digits: t.estimated_digits,
                alpha_prefix: self.alpha_prefix.clone(),
                a_block: join_block(&self.a_block),
            })
            .expect("in-memory csv");
        }
        String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf-8")
    }

    pub fn from_csv(text: &str) -> Result<EvalReport, String> {
        let mut r = csv::Reader::from_reader(text.as_bytes());
        let rows: Vec<EvalRow> = r
            .deserialize()
            .collect::<Result<_, _>>()
            .map_err(|e| e.to_string())?;
        let first = rows.first().ok_or("no rows")?;
        Ok(EvalReport {
            scheme: first.scheme.clone(),
            params: split_params(&first.params)?,
            backend: first.backend.clone(),
            precision: first.precision,
            digits: first.digits,
            terms: first.terms,
            alpha_prefix: first.alpha_prefix.clone(),
            a_block: split_block(&first.a_block),
            targets: rows
                .iter()
                .map(|row| TargetReport {
                    index: row.index,
                    descriptor: row.descriptor.clone(),
                    decimal: row.decimal.clone(),
                    exact: row.exact.clone(),
                    oracle: row.oracle.clone(),
                    matched_digits: row.matched_digits,
                    estimated_digits: row.estimated_digits,
                })
                .collect(),
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "scheme   {}", self.scheme);
        if !self.params.is_empty() {
            let _ = writeln!(out, "params   {}", join_params(&self.params).replace(';', " "));
        }
        match self.precision {
            Some(p) => {
                let _ = writeln!(out, "backend  {} ({p} bits)", self.backend);
            }
            None => {
                let _ = writeln!(out, "backend  {}", self.backend);
            }
        }
        let _ = writeln!(out, "terms    {}", self.terms);
        for t in &self.targets {
            let _ = writeln!(out, "target{} {}", t.index, t.descriptor);
            if let Some(x) = &t.exact {
                let _ = writeln!(out, "  exact     {x}");
            }
            let _ = writeln!(out, "  value     {}", t.decimal);
            let _ = writeln!(out, "  reference {}", t.oracle);
            let _ = writeln!(
                out,
                "  matched   {:.2} digits (estimated {:.2})",
                t.matched_digits, t.estimated_digits
            );
        }
        let _ = writeln!(out, "alpha_prefix {}", self.alpha_prefix);
        let _ = writeln!(out, "A block");
        for row in &self.a_block {
            let _ = writeln!(out, "  {}", row.join("  "));
        }
        out
    }
}

/// Result of `verify`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub scheme: String,
    pub params: BTreeMap<String, String>,
    pub digits: u32,
    pub terms: u64,
    pub precision: Option<u32>,
    /// The term cap was reached before the error estimate met `digits`.
    pub capped: bool,
    pub passed: bool,
    pub targets: Vec<TargetReport>,
}

impl VerifyReport {
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record([
            "scheme", "params", "digits", "terms", "precision", "capped", "passed", "index",
            "descriptor", "decimal", "oracle", "matched_digits", "estimated_digits",
        ])
        .expect("in-memory csv");
        for t in &self.targets {
            w.write_record([
                self.scheme.clone(),
                join_params(&self.params),
                self.digits.to_string(),
                self.terms.to_string(),
                self.precision.map(|p| p.to_string()).unwrap_or_default(),
                self.capped.to_string(),
                self.passed.to_string(),
                t.index.to_string(),
                t.descriptor.clone(),
                t.decimal.clone(),
                t.oracle.clone(),
                t.matched_digits.to_string(),
                t.estimated_digits.to_string(),
            ])
            .expect("in-memory csv");
        }
        String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf-8")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "{} {} at {} digits after {} terms\n",
            if self.passed { "PASS" } else { "FAIL" },
            self.scheme,
            self.digits,
            self.terms
        );
        if self.capped {
            out.push_str(&format!(
                "term cap reached: the error estimate never reached {} digits\n",
                self.digits
            ));
        }
        for t in &self.targets {
            let _ = writeln!(
                out,
                "  target{} {}: matched {:.2} digits (estimated {:.2})",
                t.index, t.descriptor, t.matched_digits, t.estimated_digits
            );
        }
        out
    }
}

/// Result of `rate`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RateOutput {
    pub scheme: String,
    pub params: BTreeMap<String, String>,
    pub window: (u64, u64),
    pub precision: u32,
    pub targets: Vec<RateTarget>,
    /// Mean slope over all targets.
    pub digits_per_term: f64,
    /// `-log10 |alpha_k|` at the end of the window.
    pub asymptotic: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RateTarget {
    pub index: usize,
    pub descriptor: String,
    pub digits_per_term: f64,
}

impl RateOutput {
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record([
            "scheme", "params", "lo", "hi", "precision", "index", "descriptor",
            "digits_per_term", "mean_digits_per_term", "asymptotic",
        ])
        .expect("in-memory csv");
        for t in &self.targets {
            w.write_record([
                self.scheme.clone(),
                join_params(&self.params),
                self.window.0.to_string(),
                self.window.1.to_string(),
                self.precision.to_string(),
                t.index.to_string(),
                t.descriptor.clone(),
                t.digits_per_term.to_string(),
                self.digits_per_term.to_string(),
                self.asymptotic.map(|a| a.to_string()).unwrap_or_default(),
            ])
            .expect("in-memory csv");
        }
        String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf-8")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "{}: {:.4} digits/term over terms {}..{}",
            self.scheme, self.digits_per_term, self.window.0, self.window.1
        );
        if let Some(a) = self.asymptotic {
            out.push_str(&format!(" (limit {a:.4})"));
        }
        out.push('\n');
        for t in &self.targets {
            let _ = writeln!(out, "  target{} {}: {:.4}", t.index, t.descriptor, t.digits_per_term);
        }
        out
    }
}

/// One line of `list`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ListEntry {
    pub name: String,
    pub dim: String,
    pub params: Vec<String>,
    pub targets: String,
    /// `builtin` or the path of the scheme file.
    pub source: String,
}

impl ListEntry {
    pub fn line(&self) -> String {
        let mut s = format!("{} dim={}", self.name, self.dim);
        if !self.params.is_empty() {
            s.push_str(&format!(" params={}", self.params.join(",")));
        }
        s.push_str(&format!(" targets={}", self.targets));
        if self.source != "builtin" {
            s.push_str(&format!(" source={}", self.source));
        }
        s
    }
}

pub fn list_csv(entries: &[ListEntry]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["name", "dim", "params", "targets", "source"])
        .expect("in-memory csv");
    for e in entries {
        w.write_record([&e.name, &e.dim, &e.params.join(";"), &e.targets, &e.source])
            .expect("in-memory csv");
    }
    String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf-8")
}
