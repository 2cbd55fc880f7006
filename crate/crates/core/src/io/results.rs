//! CSV and JSON tables. Every table always starts with its header row, and
//! absent values are written as empty fields.

use std::io::{Read, Write};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::engine::TraceRecord;
use crate::error::{Error, Result};
use crate::harness::ResultRow;
use crate::metrics::GraphMetrics;

pub const RESULT_COLUMNS: [&str; 11] = [
    "topology_id",
    "topology_kind",
    "objective",
    "death_fraction",
    "repetitions",
    "gsr",
    "gs_time",
    "winners_mean",
    "trade_off",
    "L",
    "natural_connectivity",
];

pub const METRICS_COLUMNS: [&str; 8] = [
    "topology_id",
    "n",
    "edges",
    "L",
    "natural_connectivity",
    "clustering",
    "omega",
    "connected",
];

pub const TRACE_COLUMNS: [&str; 4] = ["iter", "alive", "best_score", "converged_flag"];

/// One row of the graph metrics table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricsRow {
    pub topology_id: String,
    pub n: usize,
    pub edges: usize,
    #[serde(rename = "L")]
    pub average_path_length: Option<f64>,
    pub natural_connectivity: f64,
    pub clustering: f64,
    pub omega: Option<f64>,
    pub connected: bool,
}

impl MetricsRow {
    pub fn new(topology_id: impl Into<String>, m: &GraphMetrics) -> Self {
        MetricsRow {
            topology_id: topology_id.into(),
            n: m.node_count,
            edges: m.edge_count,
            average_path_length: m.average_path_length,
            natural_connectivity: m.natural_connectivity,
            clustering: m.clustering_coefficient,
            omega: m.small_world_ness,
            connected: m.connected,
        }
    }
}

fn write_table<W: Write, T: Serialize>(out: W, columns: &[&str], rows: &[T]) -> Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(columns)?;
    for row in rows {
        w.serialize(row)?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

fn read_table<R: Read, T: DeserializeOwned>(input: R, columns: &[&str]) -> Result<Vec<T>> {
    let mut r = csv::ReaderBuilder::new().from_reader(input);
    let headers = r.headers()?.clone();
    if headers.is_empty() {
        return Ok(Vec::new());
    }
    for c in columns {
        if !headers.iter().any(|h| h == *c) {
            return Err(Error::MissingColumn(c.to_string()));
        }
    }
    r.deserialize().map(|row| row.map_err(Error::from)).collect()
}

pub fn write_results_csv<W: Write>(out: W, rows: &[ResultRow]) -> Result<()> {
    write_table(out, &RESULT_COLUMNS, rows)
}

pub fn read_results_csv<R: Read>(input: R) -> Result<Vec<ResultRow>> {
    read_table(input, &RESULT_COLUMNS)
}

pub fn results_csv_string(rows: &[ResultRow]) -> Result<String> {
    let mut buf = Vec::new();
    write_results_csv(&mut buf, rows)?;
    Ok(String::from_utf8(buf).expect("csv output is utf-8"))
}

/// Pretty-printed JSON array with the same field names as the CSV.
pub fn results_to_json(rows: &[ResultRow]) -> Result<String> {
    Ok(serde_json::to_string_pretty(rows)?)
}

pub fn results_from_json(text: &str) -> Result<Vec<ResultRow>> {
    Ok(serde_json::from_str(text)?)
}

pub fn write_metrics_csv<W: Write>(out: W, rows: &[MetricsRow]) -> Result<()> {
    write_table(out, &METRICS_COLUMNS, rows)
}

pub fn read_metrics_csv<R: Read>(input: R) -> Result<Vec<MetricsRow>> {
    read_table(input, &METRICS_COLUMNS)
}

pub fn write_trace_csv<W: Write>(out: W, records: &[TraceRecord]) -> Result<()> {
    write_table(out, &TRACE_COLUMNS, records)
}

pub fn read_trace_csv<R: Read>(input: R) -> Result<Vec<TraceRecord>> {
    read_table(input, &TRACE_COLUMNS)
}
