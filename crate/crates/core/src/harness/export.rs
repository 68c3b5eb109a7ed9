//! Trace serialization.
//!
//! CSV columns, in order: `iteration`, `eval_count`, `best_value`,
//! `best_point_0..best_point_{d-1}`, `candidate_point_0..candidate_point_{d-1}`,
//! `accepted`. Floats use Rust's shortest round-trip formatting, so the same
//! trace always produces the same bytes.

use std::fmt::Write as _;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use super::config::TraceFormat;
use crate::error::{Error, Result};
use crate::trace::TraceRecord;

pub fn csv_header(dims: usize) -> String {
    let mut header = String::from("iteration,eval_count,best_value");
    for i in 0..dims {
        write!(header, ",best_point_{i}").unwrap();
    }
    for i in 0..dims {
        write!(header, ",candidate_point_{i}").unwrap();
    }
    header.push_str(",accepted");
    header
}

pub fn csv_row(record: &TraceRecord) -> String {
    let mut row = format!("{},{},{}", record.iteration, record.eval_count, record.best_value);
    for c in record.best_point.iter().chain(record.candidate_point.iter()) {
        write!(row, ",{c}").unwrap();
    }
    write!(row, ",{}", record.accepted).unwrap();
    row
}

/// Writes a CSV trace with a `dims`-wide header (header only when empty).
pub fn write_csv<W: Write>(mut out: W, trace: &[TraceRecord], dims: usize) -> std::io::Result<()> {
    writeln!(out, "{}", csv_header(dims))?;
    for record in trace {
        writeln!(out, "{}", csv_row(record))?;
    }
    out.flush()
}

/// One JSON object per record, field names matching [`TraceRecord`].
pub fn write_jsonl<W: Write>(mut out: W, trace: &[TraceRecord]) -> std::io::Result<()> {
    for record in trace {
        serde_json::to_writer(&mut out, record)?;
        out.write_all(b"\n")?;
    }
    out.flush()
}

/// Writes `trace` to `path`. For CSV the width is taken from the first
/// record; use [`export_trace_with_dims`] when the trace may be empty.
pub fn export_trace(trace: &[TraceRecord], path: &Path, format: TraceFormat) -> Result<()> {
    let dims = trace.first().map_or(0, |r| r.best_point.len());
    export_trace_with_dims(trace, dims, path, format)
}

pub fn export_trace_with_dims(trace: &[TraceRecord], dims: usize, path: &Path, format: TraceFormat) -> Result<()> {
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let out = BufWriter::new(file);
    match format {
        TraceFormat::Csv => write_csv(out, trace, dims),
        TraceFormat::Jsonl => write_jsonl(out, trace),
    }
    .map_err(|e| Error::io(path, e))
}
