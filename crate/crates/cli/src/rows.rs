//! Serializable report rows and the three output renderings.

use serde::{Deserialize, Serialize};
use supercong_core::report::{CongruenceReport, Verdict};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportRow {
    pub check: String,
    pub subject: u64,
    pub modulus: String,
    pub lhs: String,
    pub rhs: String,
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    pub elapsed_micros: u64,
}

pub fn verdict_str(v: Verdict) -> &'static str {
    match v {
        Verdict::Pass => "pass",
        Verdict::Fail => "fail",
        Verdict::ExpectedNegative => "expected-negative",
    }
}

impl ReportRow {
    pub fn from_report(r: CongruenceReport, elapsed_micros: u64) -> Self {
        ReportRow {
            check: r.check,
            subject: r.subject,
            modulus: r.modulus,
            lhs: r.lhs,
            rhs: r.rhs,
            verdict: verdict_str(r.verdict).to_string(),
            detail: r.detail,
            elapsed_micros: r.elapsed_micros.unwrap_or(elapsed_micros),
        }
    }

    pub fn failed(&self) -> bool {
        self.verdict == "fail"
    }
}

/// Deterministic report order: reruns with different worker counts emit the
/// same sequence.
pub fn sort_rows(rows: &mut [ReportRow]) {
    rows.sort_by(|a, b| {
        (&a.check, a.subject, &a.detail, &a.modulus).cmp(&(
            &b.check,
            b.subject,
            &b.detail,
            &b.modulus,
        ))
    });
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Human,
    Json,
    Csv,
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn render(rows: &[ReportRow], format: Format) -> String {
    match format {
        Format::Json => {
            let mut out = serde_json::to_string_pretty(rows).expect("rows serialize");
            out.push('\n');
            out
        }
        Format::Csv => {
            let mut out =
                String::from("check,subject,modulus,lhs,rhs,verdict,detail,elapsed_micros\n");
            for r in rows {
                out.push_str(&format!(
                    "{},{},{},{},{},{},{},{}\n",
                    csv_field(&r.check),
                    r.subject,
                    csv_field(&r.modulus),
                    csv_field(&r.lhs),
                    csv_field(&r.rhs),
                    r.verdict,
                    csv_field(r.detail.as_deref().unwrap_or("")),
                    r.elapsed_micros
                ));
            }
            out
        }
        Format::Human => {
            let mut out = String::new();
            let check_w = rows.iter().map(|r| r.check.len()).max().unwrap_or(5).max(5);
            let mod_w = rows
                .iter()
                .map(|r| r.modulus.len())
                .max()
                .unwrap_or(7)
                .max(7);
            out.push_str(&format!(
                "{:<check_w$}  {:>7}  {:<mod_w$}  {:<17}  relation\n",
                "check", "subject", "modulus", "verdict"
            ));
            for r in rows {
                let rel = if r.verdict == "pass" {
                    format!("{} = {}", r.lhs, r.rhs)
                } else {
                    format!("{} != {}", r.lhs, r.rhs)
                };
                let detail = r
                    .detail
                    .as_deref()
                    .map(|d| format!("  [{d}]"))
                    .unwrap_or_default();
                out.push_str(&format!(
                    "{:<check_w$}  {:>7}  {:<mod_w$}  {:<17}  {}{}\n",
                    r.check, r.subject, r.modulus, r.verdict, rel, detail
                ));
            }
            let pass = rows.iter().filter(|r| r.verdict == "pass").count();
            let fail = rows.iter().filter(|r| r.verdict == "fail").count();
            let expneg = rows
                .iter()
                .filter(|r| r.verdict == "expected-negative")
                .count();
            let micros: u64 = rows.iter().map(|r| r.elapsed_micros).sum();
            out.push_str(&format!(
                "-- {} rows: {} pass, {} fail, {} expected-negative ({:.1} ms of checks)\n",
                rows.len(),
                pass,
                fail,
                expneg,
                micros as f64 / 1000.0
            ));
            out
        }
    }
}

/// Process exit status: failures (and only failures) are fatal.
pub fn exit_code(rows: &[ReportRow]) -> i32 {
    if rows.iter().any(|r| r.failed()) {
        1
    } else {
        0
    }
}
