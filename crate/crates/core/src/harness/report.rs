//! Rendering identity and audit reports to JSON, CSV, or text.
//!
//! All three renderings are deterministic: the same reports produce
//! byte-identical output. Timings appear only when a caller filled
//! them in. CSV carries one row per report (audit violations are
//! summarized by their count there; JSON and text list them).

use std::fmt;
use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;

use super::audit::{AuditMode, AuditReport};
use super::identities::IdentityReport;

/// Output encoding for rendered reports.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ReportFormat {
    Json,
    Csv,
    Text,
}

impl ReportFormat {
    /// Stable machine name, also accepted by `FromStr`.
    pub fn name(self) -> &'static str {
        match self {
            ReportFormat::Json => "json",
            ReportFormat::Csv => "csv",
            ReportFormat::Text => "text",
        }
    }
}

impl fmt::Display for ReportFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ReportFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            "text" => Ok(ReportFormat::Text),
            other => Err(format!("unknown format {other:?}; expected json, csv, or text")),
        }
    }
}

fn json<T: Serialize>(value: &T) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("reports serialize");
    out.push('\n');
    out
}

/// Always-quoted CSV field.
fn csv_quote(field: &str) -> String {
    format!("\"{}\"", field.replace('"', "\"\""))
}

/// Render identity reports in the requested format.
pub fn render_identity_reports(reports: &[IdentityReport], format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => json(&reports),
        ReportFormat::Csv => {
            let mut out = String::from("identity,n,method,equal,lhs,rhs,elapsed_ms\n");
            for r in reports {
                let elapsed = r.elapsed_ms.map_or(String::new(), |ms| ms.to_string());
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{},{}",
                    r.identity,
                    r.n,
                    r.method,
                    r.equal,
                    csv_quote(&r.lhs),
                    csv_quote(&r.rhs),
                    elapsed
                );
            }
            out
        }
        ReportFormat::Text => {
            let mut out = String::new();
            for r in reports {
                let verdict = if r.equal { "PASS" } else { "FAIL" };
                let timing = r
                    .elapsed_ms
                    .map_or(String::new(), |ms| format!(" in {ms} ms"));
                let _ = writeln!(
                    out,
                    "{} n={} [{}]: {verdict} (lhs = {}, rhs = {}){timing}",
                    r.identity, r.n, r.method, r.lhs, r.rhs
                );
            }
            out
        }
    }
}

/// Render audit reports in the requested format.
pub fn render_audit_reports(reports: &[AuditReport], format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => json(&reports),
        ReportFormat::Csv => {
            let mut out = String::from(
                "family,n,mode,population,family_size,fixed_points,violation_count,samples,seed\n",
            );
            for r in reports {
                let (mode, samples, seed) = match r.mode {
                    AuditMode::Exhaustive => ("exhaustive", String::new(), String::new()),
                    AuditMode::Sample { count, seed } => {
                        ("sample", count.to_string(), seed.to_string())
                    }
                };
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{},{},{},{}",
                    r.family,
                    r.n,
                    mode,
                    r.population,
                    r.family_size,
                    r.fixed_points,
                    r.violation_count,
                    samples,
                    seed
                );
            }
            out
        }
        ReportFormat::Text => {
            let mut out = String::new();
            for r in reports {
                let verdict = if r.passed() { "PASS" } else { "FAIL" };
                let mode = match r.mode {
                    AuditMode::Exhaustive => "exhaustive".to_string(),
                    AuditMode::Sample { count, seed } => {
                        format!("sample(count={count}, seed={seed})")
                    }
                };
                let _ = writeln!(
                    out,
                    "{} n={} {mode}: {verdict} — {} of {} objects, {} fixed, {} violations",
                    r.family, r.n, r.population, r.family_size, r.fixed_points, r.violation_count
                );
                for v in &r.violations {
                    let _ = writeln!(out, "  - {}: {}", v.object, v.detail);
                }
            }
            out
        }
    }
}
