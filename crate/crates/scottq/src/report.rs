//! Deterministic serialization of evaluation results: JSON (versioned
//! schema), CSV, and a human-oriented text form. Identical inputs yield
//! identical bytes. Floats are rounded to 12 significant digits at this
//! boundary; exact purities print as "1/2^k" and exact measures as reduced
//! fractions.

use serde::Serialize;
use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::measures::QmReport;
use crate::verify::{ClaimRecord, ClaimStatus};

/// Schema version stamped on every JSON payload.
pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Csv,
    Text,
}

impl std::str::FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<OutputFormat> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            "text" => Ok(OutputFormat::Text),
            other => Err(Error::Syntax(format!(
                "unknown format {other:?}; expected json, csv, or text"
            ))),
        }
    }
}

impl std::fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            OutputFormat::Json => "json",
            OutputFormat::Csv => "csv",
            OutputFormat::Text => "text",
        })
    }
}

/// Round to 12 significant digits.
pub fn sig12(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.11e}")
        .parse()
        .expect("scientific notation round-trip")
}

/// Shortest decimal form of the 12-significant-digit rounding.
fn fmt_float(x: f64) -> String {
    format!("{}", sig12(x))
}

#[derive(Serialize)]
struct JsonReport<'a> {
    version: &'static str,
    command: &'a str,
    n: usize,
    engine: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    graph: Option<&'a str>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    values: BTreeMap<usize, f64>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    values_exact: BTreeMap<usize, String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    complement_note: Option<&'a str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    max_engine_gap: Option<f64>,
    purities: Vec<JsonPurity>,
    claims: Vec<&'a ClaimRecord>,
}

#[derive(Serialize)]
struct JsonPurity {
    subset: Vec<usize>,
    value: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    exact: Option<String>,
}

fn json_report<'a>(rep: &'a QmReport, command: &'a str, with_values: bool) -> JsonReport<'a> {
    let mut values = BTreeMap::new();
    let mut values_exact = BTreeMap::new();
    if with_values {
        for v in &rep.values {
            values.insert(v.m, sig12(v.value));
            if let Some(r) = &v.exact {
                values_exact.insert(v.m, r.to_string());
            }
        }
    }
    JsonReport {
        version: SCHEMA_VERSION,
        command,
        n: rep.n,
        engine: rep.engine.to_string(),
        graph: rep.graph6.as_deref(),
        values,
        values_exact,
        complement_note: if with_values {
            rep.complement_note.as_deref()
        } else {
            None
        },
        max_engine_gap: rep.max_engine_gap.map(sig12),
        purities: rep
            .purities
            .iter()
            .map(|p| JsonPurity {
                subset: p.subset.labels(),
                value: sig12(p.value),
                exact: p.exact.map(|e| e.to_string()),
            })
            .collect(),
        claims: Vec::new(),
    }
}

fn to_pretty_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serialization");
    s.push('\n');
    s
}

/// Serialize one or more evaluation reports. A single report is a JSON
/// object; several (file input with several graphs) form a JSON array and
/// gain a leading `graph` CSV column.
pub fn render_reports(
    reps: &[QmReport],
    command: &str,
    with_values: bool,
    format: OutputFormat,
) -> String {
    match format {
        OutputFormat::Json => {
            if reps.len() == 1 {
                to_pretty_json(&json_report(&reps[0], command, with_values))
            } else {
                let arr: Vec<JsonReport> = reps
                    .iter()
                    .map(|r| json_report(r, command, with_values))
                    .collect();
                to_pretty_json(&arr)
            }
        }
        OutputFormat::Csv => {
            let multi = reps.len() > 1;
            let mut out = String::new();
            if multi {
                out.push_str("graph,subset,size,value,exact\n");
            } else {
                out.push_str("subset,size,value,exact\n");
            }
            for rep in reps {
                let graph = rep.graph6.as_deref().unwrap_or("-");
                for p in &rep.purities {
                    let labels: Vec<String> =
                        p.subset.labels().iter().map(|l| l.to_string()).collect();
                    if multi {
                        out.push_str(graph);
                        out.push(',');
                    }
                    out.push_str(&format!(
                        "{},{},{},{}\n",
                        labels.join(" "),
                        p.subset.size(),
                        fmt_float(p.value),
                        p.exact.map(|e| e.to_string()).unwrap_or_default()
                    ));
                }
            }
            out
        }
        OutputFormat::Text => {
            let mut out = String::new();
            for (i, rep) in reps.iter().enumerate() {
                if i > 0 {
                    out.push('\n');
                }
                out.push_str(&format!("n = {}\nengine = {}\n", rep.n, rep.engine));
                if let Some(g) = &rep.graph6 {
                    out.push_str(&format!("graph = {g}\n"));
                }
                if with_values {
                    for v in &rep.values {
                        out.push_str(&format!("Q_{} = {}", v.m, fmt_float(v.value)));
                        if let Some(r) = &v.exact {
                            out.push_str(&format!(" (exact {r})"));
                        }
                        if let Some(partner) = v.complement_partner {
                            out.push_str(&format!(" [proportional to Q_{partner}]"));
                        }
                        out.push('\n');
                    }
                    if let Some(note) = &rep.complement_note {
                        out.push_str(&format!("note: {note}\n"));
                    }
                }
                out.push_str("purities:\n");
                for p in &rep.purities {
                    out.push_str(&format!("  {} {}", p.subset, fmt_float(p.value)));
                    if let Some(e) = p.exact {
                        out.push_str(&format!(" ({e})"));
                    }
                    out.push('\n');
                }
            }
            out
        }
    }
}

/// One row of an enumeration sweep.
pub struct EnumRow {
    pub graph6: String,
    pub report: QmReport,
}

#[derive(Serialize)]
struct JsonEnumRun<'a> {
    version: &'static str,
    command: &'static str,
    n: usize,
    engine: String,
    connected_only: bool,
    up_to_iso: bool,
    count: usize,
    rows: Vec<JsonEnumRow<'a>>,
}

#[derive(Serialize)]
struct JsonEnumRow<'a> {
    graph: &'a str,
    values: BTreeMap<usize, f64>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    values_exact: BTreeMap<usize, String>,
}

/// Serialize an enumeration sweep, one row per graph.
pub fn render_enumerate(
    n: usize,
    engine: &str,
    connected_only: bool,
    up_to_iso: bool,
    rows: &[EnumRow],
    format: OutputFormat,
) -> String {
    match format {
        OutputFormat::Json => {
            let run = JsonEnumRun {
                version: SCHEMA_VERSION,
                command: "enumerate",
                n,
                engine: engine.to_string(),
                connected_only,
                up_to_iso,
                count: rows.len(),
                rows: rows
                    .iter()
                    .map(|r| JsonEnumRow {
                        graph: &r.graph6,
                        values: r
                            .report
                            .values
                            .iter()
                            .map(|v| (v.m, sig12(v.value)))
                            .collect(),
                        values_exact: r
                            .report
                            .values
                            .iter()
                            .filter_map(|v| v.exact.as_ref().map(|e| (v.m, e.to_string())))
                            .collect(),
                    })
                    .collect(),
            };
            to_pretty_json(&run)
        }
        OutputFormat::Csv => {
            let ms: Vec<usize> = rows
                .first()
                .map(|r| r.report.values.iter().map(|v| v.m).collect())
                .unwrap_or_default();
            let mut out = String::from("graph");
            for m in &ms {
                out.push_str(&format!(",q{m},q{m}_exact"));
            }
            out.push('\n');
            for r in rows {
                out.push_str(&r.graph6);
                for v in &r.report.values {
                    out.push_str(&format!(
                        ",{},{}",
                        fmt_float(v.value),
                        v.exact.as_ref().map(|e| e.to_string()).unwrap_or_default()
                    ));
                }
                out.push('\n');
            }
            out
        }
        OutputFormat::Text => {
            let mut out = String::new();
            for r in rows {
                out.push_str(&r.graph6);
                for v in &r.report.values {
                    out.push_str(&format!("  Q_{} = {}", v.m, fmt_float(v.value)));
                    if let Some(e) = &v.exact {
                        out.push_str(&format!(" ({e})"));
                    }
                }
                out.push('\n');
            }
            out
        }
    }
}

#[derive(Serialize)]
struct JsonAmeRun<'a> {
    version: &'static str,
    command: &'static str,
    n: usize,
    count: usize,
    graphs: &'a [String],
}

/// Serialize a maximal-mixedness search result.
pub fn render_ame(n: usize, graphs: &[String], format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => to_pretty_json(&JsonAmeRun {
            version: SCHEMA_VERSION,
            command: "ame-search",
            n,
            count: graphs.len(),
            graphs,
        }),
        OutputFormat::Csv => {
            let mut out = String::from("graph\n");
            for g in graphs {
                out.push_str(g);
                out.push('\n');
            }
            out
        }
        OutputFormat::Text => {
            let mut out = format!(
                "{} graph(s) on {} vertices with all small marginals maximally mixed\n",
                graphs.len(),
                n
            );
            for g in graphs {
                out.push_str(g);
                out.push('\n');
            }
            out
        }
    }
}

#[derive(Serialize)]
struct JsonClaimRun<'a> {
    version: &'static str,
    command: &'static str,
    seed: u64,
    passed: bool,
    claims: &'a [ClaimRecord],
}

/// Serialize a claim-suite run.
pub fn render_claims(seed: u64, claims: &[ClaimRecord], format: OutputFormat) -> String {
    let passed = claims.iter().all(|c| c.status != ClaimStatus::Fail);
    match format {
        OutputFormat::Json => to_pretty_json(&JsonClaimRun {
            version: SCHEMA_VERSION,
            command: "verify-paper",
            seed,
            passed,
            claims,
        }),
        OutputFormat::Csv => {
            let mut out = String::from("id,status,description\n");
            for c in claims {
                out.push_str(&format!("{},{},{}\n", c.id, c.status, c.description));
            }
            out
        }
        OutputFormat::Text => {
            let mut out = String::new();
            for c in claims {
                out.push_str(&format!(
                    "{:<4} {:<13} {}\n",
                    c.id,
                    c.status.to_string(),
                    c.description
                ));
            }
            out.push_str(if passed {
                "all claims passed\n"
            } else {
                "CLAIM FAILURES PRESENT\n"
            });
            out
        }
    }
}
