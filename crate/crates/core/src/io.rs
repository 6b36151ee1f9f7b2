//! CSV and JSON interchange formats.
//!
//! Every JSON document carries a `schema` field; non-finite reals are written
//! as the strings `"inf"` and `"-inf"`. CSV reals use 17 significant digits.

use std::io::Read;

use serde::Deserialize;
use serde_json::{json, Value};

use crate::complex::FilteredComplex;
use crate::error::{Error, Result};
use crate::homology::Barcode;
use crate::scalar::Scalar;
use crate::transport::TransportPlan;

pub const SCHEMA_COMPLEX: &str = "antirips.complex/v1";
pub const SCHEMA_BARCODE: &str = "antirips.barcode/v1";
pub const SCHEMA_BETTI: &str = "antirips.betti/v1";
pub const SCHEMA_CONSTANTS: &str = "antirips.constants/v1";
pub const SCHEMA_TRANSPORT: &str = "antirips.transport/v1";
pub const SCHEMA_MEASURE: &str = "antirips.measure/v1";
pub const SCHEMA_LIFT: &str = "antirips.lift/v1";
pub const SCHEMA_COVER: &str = "antirips.cover_dim/v1";
pub const SCHEMA_COLORING: &str = "antirips.coloring/v1";
pub const SCHEMA_HOMSEARCH: &str = "antirips.homsearch/v1";

/// Formats a real as the shortest string that parses back to it.
pub fn fmt_real(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let s = format!("{x:?}");
    match s.strip_suffix(".0") {
        Some(t) => t.to_string(),
        None => s,
    }
}

/// JSON value for a real, with infinities as strings.
pub fn json_real(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else {
        json!(fmt_real(x))
    }
}

fn parse_real(s: &str) -> Option<f64> {
    match s.trim() {
        "inf" | "+inf" | "Infinity" => Some(f64::INFINITY),
        "-inf" | "-Infinity" => Some(f64::NEG_INFINITY),
        t => t.parse().ok(),
    }
}

/// Numeric CSV table with an optional non-numeric header row.
#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub header: Option<Vec<String>>,
    pub rows: Vec<Vec<f64>>,
}

/// Reads a numeric CSV; a first row that does not parse is taken as a header.
pub fn read_table<R: Read>(reader: R) -> Result<Table> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(reader);
    let mut header = None;
    let mut rows = Vec::new();
    for (line, rec) in rdr.records().enumerate() {
        let rec = rec?;
        let parsed: Option<Vec<f64>> = rec.iter().map(parse_real).collect();
        match parsed {
            Some(r) => rows.push(r),
            None if line == 0 => header = Some(rec.iter().map(str::to_string).collect()),
            None => return Err(Error::Parse(format!("non-numeric entry on row {}", line + 1))),
        }
    }
    Ok(Table { header, rows })
}

/// Writes rows of reals as CSV.
pub fn write_table(header: Option<&[String]>, rows: &[Vec<f64>]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    if let Some(h) = header {
        w.write_record(h)?;
    }
    for r in rows {
        w.write_record(r.iter().map(|&x| fmt_real(x)))?;
    }
    String::from_utf8(w.into_inner().map_err(|e| Error::Parse(e.to_string()))?)
        .map_err(|e| Error::Parse(e.to_string()))
}

/// JSON export of a complex.
pub fn complex_to_json<T: Scalar>(c: &FilteredComplex<T>) -> Value {
    json!({
        "schema": SCHEMA_COMPLEX,
        "flavor": c.flavor(),
        "n_vertices": c.n_vertices(),
        "dim_cap": c.dim_cap(),
        "f_vector": c.f_vector(),
        "simplices": c.simplices().iter().map(|s| json!({
            "vertices": s.vertices,
            "value": json_real(s.value.to_f64_lossy()),
        })).collect::<Vec<_>>(),
    })
}

/// Graphviz export of the 1-skeleton, edges labelled by value.
pub fn complex_to_dot<T: Scalar>(c: &FilteredComplex<T>, labels: Option<&[String]>) -> String {
    let mut out = String::from("graph complex {\n");
    for v in 0..c.n_vertices() {
        let name = labels.and_then(|l| l.get(v)).cloned().unwrap_or_else(|| v.to_string());
        out.push_str(&format!("  {v} [label=\"{}\"];\n", name.replace('"', "\\\"")));
    }
    for s in c.simplices().iter().filter(|s| s.vertices.len() == 2) {
        out.push_str(&format!(
            "  {} -- {} [label=\"{}\"];\n",
            s.vertices[0],
            s.vertices[1],
            fmt_real(s.value.to_f64_lossy())
        ));
    }
    out.push_str("}\n");
    out
}

/// JSON export of a barcode.
pub fn barcode_to_json<T: Scalar>(b: &Barcode<T>) -> Value {
    json!({
        "schema": SCHEMA_BARCODE,
        "intervals": b.bars.iter().map(|bar| json!({
            "dim": bar.dim,
            "birth": json_real(bar.birth.to_f64_lossy()),
            "death": json_real(bar.death.to_f64_lossy()),
        })).collect::<Vec<_>>(),
    })
}

/// CSV export of a barcode with columns `dim,birth,death`.
pub fn barcode_to_csv<T: Scalar>(b: &Barcode<T>) -> String {
    let mut out = String::from("dim,birth,death\n");
    for bar in &b.bars {
        out.push_str(&format!(
            "{},{},{}\n",
            bar.dim,
            fmt_real(bar.birth.to_f64_lossy()),
            fmt_real(bar.death.to_f64_lossy())
        ));
    }
    out
}

/// Measure document: either sphere `points` or `indices` into a metric space.
#[derive(Clone, Debug, PartialEq, Deserialize)]
pub struct MeasureDoc {
    #[serde(default)]
    pub points: Option<Vec<Vec<f64>>>,
    #[serde(default)]
    pub indices: Option<Vec<usize>>,
    pub weights: Vec<f64>,
}

pub fn read_measure<R: Read>(reader: R) -> Result<MeasureDoc> {
    let doc: MeasureDoc = serde_json::from_reader(reader)?;
    if doc.points.is_some() == doc.indices.is_some() {
        return Err(Error::Parse("measure needs exactly one of `points` or `indices`".into()));
    }
    Ok(doc)
}

/// JSON for a sphere measure.
pub fn sphere_measure_to_json<T: Scalar>(m: &crate::sphere::SphereMeasure<T>) -> Value {
    json!({
        "schema": SCHEMA_MEASURE,
        "points": m.points().iter().map(|p| p.iter().map(|x| x.to_f64_lossy()).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "weights": m.weights().iter().map(|w| w.to_f64_lossy()).collect::<Vec<_>>(),
    })
}

/// JSON for an optimal plan as sparse `[row, col, mass]` triplets.
pub fn plan_to_json<T: Scalar>(value: T, plan: &TransportPlan<T>) -> Value {
    json!({
        "schema": SCHEMA_TRANSPORT,
        "value": value.to_f64_lossy(),
        "rows": plan.rows,
        "cols": plan.cols,
        "plan": plan.entries.iter().map(|&(i, j, v)| json!([i, j, v.to_f64_lossy()])).collect::<Vec<_>>(),
    })
}
