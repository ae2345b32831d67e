//! JSON and text rendering of verification reports.

use std::fmt::Write as _;

use omfact_core::verify::{ReportDocument, VerificationReport, DERIVED_TABLE};
use serde::Serialize;

/// Big integers are written as decimal strings.
#[derive(Serialize)]
pub struct JsonDocument {
    pub schema_version: u32,
    pub rows: Vec<JsonRow>,
    pub derived_table: Vec<JsonDerived>,
}

#[derive(Serialize)]
pub struct JsonExpected {
    pub quantity: String,
    pub value: String,
    pub provenance: String,
}

#[derive(Serialize)]
pub struct JsonCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Serialize)]
pub struct JsonRow {
    pub row: u32,
    pub m: u32,
    pub q: u32,
    pub variant: Option<String>,
    pub method: &'static str,
    pub z_order: Option<String>,
    pub x_order: Option<String>,
    pub y_order: Option<String>,
    pub datum: String,
    pub orbit_size: Option<u64>,
    pub intersection_order: Option<String>,
    /// The headline expectation: the intersection order, or the index for arithmetic rows.
    pub expected: Option<JsonExpected>,
    pub expected_all: Vec<JsonExpected>,
    pub checks: Vec<JsonCheck>,
    pub findings: Vec<String>,
    pub status: &'static str,
    pub elapsed_ms: u64,
}

#[derive(Serialize)]
pub struct JsonDerived {
    pub row: u32,
    pub socle: &'static str,
    pub h_inf: &'static str,
    pub k_inf: &'static str,
    pub conditions: &'static str,
    pub leads_to: &'static [u32],
}

fn headline(r: &VerificationReport) -> Option<JsonExpected> {
    let pick = ["stabilizer order", "X n Y order", "index"];
    pick.iter()
        .find_map(|k| r.expected.iter().find(|e| e.quantity == *k))
        .or(r.expected.first())
        .map(expected)
}

fn expected(e: &omfact_core::verify::Expected) -> JsonExpected {
    JsonExpected {
        quantity: e.quantity.clone(),
        value: e.value.to_string(),
        provenance: e.provenance.clone(),
    }
}

pub fn json_row(r: &VerificationReport) -> JsonRow {
    JsonRow {
        row: r.row,
        m: r.m,
        q: r.q,
        variant: r.variant.clone(),
        method: r.method.as_str(),
        z_order: r.z_order.as_ref().map(ToString::to_string),
        x_order: r.x_order.as_ref().map(ToString::to_string),
        y_order: r.y_order.as_ref().map(ToString::to_string),
        datum: r.datum.clone(),
        orbit_size: r.orbit_size,
        intersection_order: r.intersection_order.as_ref().map(ToString::to_string),
        expected: headline(r),
        expected_all: r.expected.iter().map(expected).collect(),
        checks: r
            .checks
            .iter()
            .map(|c| JsonCheck {
                name: c.name.clone(),
                passed: c.passed,
                detail: c.detail.clone(),
            })
            .collect(),
        findings: r.findings.clone(),
        status: r.status.as_str(),
        elapsed_ms: r.elapsed_ms,
    }
}

pub fn json_document(doc: &ReportDocument) -> JsonDocument {
    JsonDocument {
        schema_version: doc.schema_version,
        rows: doc.rows.iter().map(json_row).collect(),
        derived_table: DERIVED_TABLE
            .iter()
            .map(|d| JsonDerived {
                row: d.row,
                socle: d.socle,
                h_inf: d.h_inf,
                k_inf: d.k_inf,
                conditions: d.conditions,
                leads_to: d.leads_to,
            })
            .collect(),
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_json(doc: &ReportDocument) -> String {
    let mut s = serde_json::to_string_pretty(&json_document(doc)).expect("report serializes");
    s.push('\n');
    s
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(|| "-".into(), ToString::to_string)
}

/// A fixed-width table followed by per-row checks and findings.
pub fn to_text(doc: &ReportDocument) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "schema version {}", doc.schema_version);
    let _ = writeln!(
        s,
        "{:>3} {:>2} {:>2} {:<4} {:<12} {:<15} {:>9} {:>12}",
        "row", "m", "q", "var", "method", "status", "orbit", "X n Y"
    );
    for r in &doc.rows {
        let _ = writeln!(
            s,
            "{:>3} {:>2} {:>2} {:<4} {:<12} {:<15} {:>9} {:>12}",
            r.row,
            r.m,
            r.q,
            r.variant.as_deref().unwrap_or("-"),
            r.method.as_str(),
            r.status.as_str(),
            opt(&r.orbit_size),
            opt(&r.intersection_order),
        );
    }
    for r in &doc.rows {
        let _ = writeln!(
            s,
            "\nrow {} (m = {}, q = {}){}",
            r.row,
            r.m,
            r.q,
            r.variant
                .as_ref()
                .map_or(String::new(), |v| format!(" {v}"))
        );
        if !r.datum.is_empty() {
            let _ = writeln!(s, "  datum {}", r.datum);
        }
        for (k, v) in [("Z", &r.z_order), ("X", &r.x_order), ("Y", &r.y_order)] {
            if let Some(v) = v {
                let _ = writeln!(s, "  |{k}| = {v}");
            }
        }
        for c in &r.checks {
            let mark = if c.passed { "ok  " } else { "FAIL" };
            if c.detail.is_empty() {
                let _ = writeln!(s, "  [{mark}] {}", c.name);
            } else {
                let _ = writeln!(s, "  [{mark}] {}: {}", c.name, c.detail);
            }
        }
        for e in &r.expected {
            let _ = writeln!(
                s,
                "  expected {} = {} ({})",
                e.quantity, e.value, e.provenance
            );
        }
        for f in &r.findings {
            let _ = writeln!(s, "  finding: {f}");
        }
        if r.elapsed_ms > 0 {
            let _ = writeln!(s, "  elapsed {} ms", r.elapsed_ms);
        }
    }
    s
}
