//! Output emission: JSON with full-precision floats, CSV rows, and
//! human-readable text.
//!
//! JSON is the machine format: every float prints in scientific notation
//! with 15 significant digits, so nothing is rounded away and identical
//! inputs produce byte-identical documents. Text mode rounds to 6
//! significant digits for reading; CSV keeps shortest-round-trip floats.

use std::io;

use entrobell::InequalityReport;
use serde::Serialize;

struct FullPrecision;

impl serde_json::ser::Formatter for FullPrecision {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        write!(writer, "{value:.14e}")
    }
}

/// Serializes any value as a JSON document with full-precision floats and a
/// trailing newline.
pub fn to_json_string<T: Serialize>(value: &T) -> String {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, FullPrecision);
    value
        .serialize(&mut ser)
        .expect("in-memory JSON serialization cannot fail");
    out.push(b'\n');
    String::from_utf8(out).expect("serde_json emits UTF-8")
}

/// Rounds to 6 significant digits for text output.
pub fn sig6(x: f64) -> String {
    if x == 0.0 {
        return "0.00000".into();
    }
    let a = x.abs();
    if (1e-4..1e7).contains(&a) {
        let exponent = a.log10().floor() as i32;
        let decimals = (5 - exponent).max(0) as usize;
        format!("{x:.decimals$}")
    } else {
        format!("{x:.5e}")
    }
}

/// One text line per report: name, lhs, bound, margin, verdict.
pub fn report_line(r: &InequalityReport) -> String {
    format!(
        "{:<34} lhs = {:>12}  bound = {:>12}  margin = {:>12}  [{}]",
        r.name,
        sig6(r.lhs),
        sig6(r.bound),
        sig6(r.margin),
        if r.satisfied { "ok" } else { "VIOLATED" }
    )
}

/// CSV with the report columns, header included.
pub fn reports_to_csv(reports: &[InequalityReport]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in reports {
        w.serialize(r).expect("CSV serialization cannot fail");
    }
    // an empty report list still gets its header row
    if reports.is_empty() {
        w.write_record([
            "name",
            "lhs",
            "bound",
            "satisfied",
            "margin",
            "input_descriptor",
        ])
        .expect("CSV header write cannot fail");
    }
    String::from_utf8(w.into_inner().expect("CSV flush cannot fail")).expect("CSV output is UTF-8")
}

/// Two-column numeric CSV (for sweeps).
pub fn table_to_csv(columns: (&str, &str), rows: &[(f64, f64)]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([columns.0, columns.1])
        .expect("header write");
    for (a, b) in rows {
        w.write_record([a.to_string(), b.to_string()])
            .expect("row write");
    }
    String::from_utf8(w.into_inner().expect("CSV flush cannot fail")).expect("CSV output is UTF-8")
}

/// Key/value CSV (for scenario value outputs).
pub fn values_to_csv(values: &[(String, f64)]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["name", "value"]).expect("header write");
    for (k, v) in values {
        w.write_record([k.clone(), v.to_string()])
            .expect("row write");
    }
    String::from_utf8(w.into_inner().expect("CSV flush cannot fail")).expect("CSV output is UTF-8")
}
