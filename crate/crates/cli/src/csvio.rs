//! CSV readers and writers for every on-disk table.
//!
//! All schemas are header-checked. Parse failures report the 1-based
//! line and column of the offending cell. Floats are written with the
//! shortest representation that parses back to the identical value, so a
//! write/read round trip is lossless.
//!
//! Label columns accept either the state form `S3` or a bare zero-based
//! integer `2`; fused-link files write the state form, feature tables
//! write the integer.

use std::path::Path;

use statelink_core::datalink::{
    AlarmGroup, FusedRecord, IndexRow, IndexTable, LinkPacketStats, PacketTiming,
    PhysicalSnapshot, StateDataLink,
};
use statelink_core::matrix::Matrix;
use statelink_core::metrics::{PrCurve, RocCurve};

use crate::error::{CliError, Result};

/// Column names shared by the fused-link schema, before the feature block.
const LINK_HEAD: [&str; 7] = [
    "timestamp",
    "area",
    "line",
    "component_id",
    "ip",
    "repeat_count",
    "label",
];

/// Column names of the balanced-table schema, before the feature block.
const BALANCED_HEAD: [&str; 5] = ["label", "synthetic", "source_index", "neighbor_index", "eta"];

fn open(path: &Path) -> Result<csv::Reader<std::fs::File>> {
    csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(false)
        .from_path(path)
        .map_err(|e| match e.kind() {
            csv::ErrorKind::Io(io) if io.kind() == std::io::ErrorKind::NotFound => {
                CliError::MissingFile(path.to_path_buf())
            }
            _ => CliError::Other(format!("cannot open {}: {e}", path.display())),
        })
}

fn csv_err(path: &Path, e: csv::Error) -> CliError {
    match e.kind() {
        csv::ErrorKind::UnequalLengths { pos, expected_len, len } => CliError::Csv {
            path: path.to_path_buf(),
            row: pos.as_ref().map_or(0, |p| p.line() as usize),
            col: (*expected_len.min(len) + 1) as usize,
            message: format!("expected {expected_len} fields, found {len}"),
        },
        _ => CliError::Csv {
            path: path.to_path_buf(),
            row: 0,
            col: 0,
            message: e.to_string(),
        },
    }
}

/// One row under read: wraps typed field access with located errors.
struct Row<'a> {
    path: &'a Path,
    line: usize,
    record: &'a csv::StringRecord,
}

impl<'a> Row<'a> {
    fn cell(&self, col: usize) -> Result<&'a str> {
        self.record.get(col).ok_or_else(|| CliError::Csv {
            path: self.path.to_path_buf(),
            row: self.line,
            col: col + 1,
            message: "missing field".into(),
        })
    }

    fn bad(&self, col: usize, message: String) -> CliError {
        CliError::Csv {
            path: self.path.to_path_buf(),
            row: self.line,
            col: col + 1,
            message,
        }
    }

    fn f64(&self, col: usize) -> Result<f64> {
        let raw = self.cell(col)?;
        let value: f64 = raw
            .trim()
            .parse()
            .map_err(|_| self.bad(col, format!("expected a number, found {raw:?}")))?;
        if !value.is_finite() {
            return Err(self.bad(col, format!("expected a finite number, found {raw:?}")));
        }
        Ok(value)
    }

    fn u64(&self, col: usize) -> Result<u64> {
        let raw = self.cell(col)?;
        raw.trim()
            .parse()
            .map_err(|_| self.bad(col, format!("expected a nonnegative integer, found {raw:?}")))
    }

    fn u32(&self, col: usize) -> Result<u32> {
        let raw = self.cell(col)?;
        raw.trim()
            .parse()
            .map_err(|_| self.bad(col, format!("expected a nonnegative integer, found {raw:?}")))
    }

    fn string(&self, col: usize) -> Result<String> {
        Ok(self.cell(col)?.to_string())
    }

    /// Label cell: empty means unlabeled, `S<k>` means class k-1, a bare
    /// integer is the class itself.
    fn label(&self, col: usize) -> Result<Option<u32>> {
        let raw = self.cell(col)?.trim();
        if raw.is_empty() {
            return Ok(None);
        }
        let digits = raw.strip_prefix('S').unwrap_or(raw);
        let value: u32 = digits
            .parse()
            .map_err(|_| self.bad(col, format!("expected a label like S3 or 2, found {raw:?}")))?;
        if let Some(stripped) = raw.strip_prefix('S') {
            let _ = stripped;
            if value == 0 {
                return Err(self.bad(col, "state labels start at S1".into()));
            }
            Ok(Some(value - 1))
        } else {
            Ok(Some(value))
        }
    }
}

/// Walks data rows of `path`, handing each to `visit` with its location.
fn for_each_row(
    path: &Path,
    expect_width: usize,
    mut visit: impl FnMut(Row<'_>) -> Result<()>,
) -> Result<Vec<String>> {
    let mut reader = open(path)?;
    let header: Vec<String> = reader
        .headers()
        .map_err(|e| csv_err(path, e))?
        .iter()
        .map(str::to_string)
        .collect();
    if header.len() < expect_width {
        return Err(CliError::Csv {
            path: path.to_path_buf(),
            row: 1,
            col: header.len() + 1,
            message: format!(
                "header has {} columns, expected at least {expect_width}",
                header.len()
            ),
        });
    }
    let mut record = csv::StringRecord::new();
    loop {
        match reader.read_record(&mut record) {
            Ok(true) => {}
            Ok(false) => break,
            Err(e) => return Err(csv_err(path, e)),
        }
        let line = record.position().map_or(0, |p| p.line() as usize);
        visit(Row {
            path,
            line,
            record: &record,
        })?;
    }
    Ok(header)
}

fn check_head(path: &Path, header: &[String], want: &[&str]) -> Result<()> {
    for (i, name) in want.iter().enumerate() {
        if header.get(i).map(String::as_str) != Some(*name) {
            return Err(CliError::Csv {
                path: path.to_path_buf(),
                row: 1,
                col: i + 1,
                message: format!(
                    "bad header: expected column {:?}, found {:?}",
                    name,
                    header.get(i).map(String::as_str).unwrap_or("")
                ),
            });
        }
    }
    Ok(())
}

fn writer(path: &Path) -> Result<csv::Writer<std::fs::File>> {
    csv::WriterBuilder::new()
        .from_path(path)
        .map_err(|e| CliError::Other(format!("cannot create {}: {e}", path.display())))
}

fn finish(path: &Path, mut w: csv::Writer<std::fs::File>) -> Result<()> {
    w.flush()
        .map_err(|e| CliError::Other(format!("cannot write {}: {e}", path.display())))
}

fn fmt_f64(v: f64) -> String {
    format!("{v}")
}

// ---------------------------------------------------------------------
// Fused link table
// ---------------------------------------------------------------------

/// Writes a fused data link; labels appear in the `S<k>` state form.
pub fn write_link(path: &Path, link: &StateDataLink) -> Result<()> {
    let width = link.feature_width();
    let mut w = writer(path)?;
    let mut header: Vec<String> = LINK_HEAD.iter().map(|s| s.to_string()).collect();
    header.extend((0..width).map(|i| format!("f{i}")));
    w.write_record(&header).map_err(|e| csv_err(path, e))?;
    for r in &link.records {
        let mut row: Vec<String> = vec![
            fmt_f64(r.timestamp),
            r.area.clone(),
            r.line.clone(),
            r.component_id.clone(),
            r.ip.clone(),
            r.repeat_count.to_string(),
            r.label.map(|l| format!("S{}", l + 1)).unwrap_or_default(),
        ];
        row.extend(r.features.iter().map(|&v| fmt_f64(v)));
        w.write_record(&row).map_err(|e| csv_err(path, e))?;
    }
    finish(path, w)
}

/// Reads a fused data link written by [`write_link`].
pub fn read_link(path: &Path) -> Result<StateDataLink> {
    let mut records = Vec::new();
    let mut header_width = None;
    let header = for_each_row(path, LINK_HEAD.len(), |row| {
        let width = header_width.unwrap_or(row.record.len() - LINK_HEAD.len());
        header_width = Some(width);
        let mut features = Vec::with_capacity(width);
        for c in 0..width {
            features.push(row.f64(LINK_HEAD.len() + c)?);
        }
        records.push(FusedRecord {
            timestamp: row.f64(0)?,
            area: row.string(1)?,
            line: row.string(2)?,
            component_id: row.string(3)?,
            ip: row.string(4)?,
            repeat_count: row.u32(5)?,
            label: row.label(6)?,
            features,
        });
        Ok(())
    })?;
    check_head(path, &header, &LINK_HEAD)?;
    let link = StateDataLink { records };
    link.validate()?;
    Ok(link)
}

// ---------------------------------------------------------------------
// Labeled feature tables
// ---------------------------------------------------------------------

/// A labeled feature table read from any recognized schema.
#[derive(Debug)]
pub struct LabeledTable {
    pub features: Matrix,
    pub labels: Vec<u32>,
}

/// Reads labels and features from a fused-link file, a balanced table,
/// or a plain `label,f0..` table, dispatching on the header.
pub fn read_labeled(path: &Path) -> Result<LabeledTable> {
    let mut reader = open(path)?;
    let header: Vec<String> = reader
        .headers()
        .map_err(|e| csv_err(path, e))?
        .iter()
        .map(str::to_string)
        .collect();
    drop(reader);

    let (label_col, feature_start) = match header.first().map(String::as_str) {
        Some("timestamp") => (6usize, LINK_HEAD.len()),
        Some("label") if header.get(1).map(String::as_str) == Some("synthetic") => {
            (0usize, BALANCED_HEAD.len())
        }
        Some("label") => (0usize, 1usize),
        other => {
            return Err(CliError::Csv {
                path: path.to_path_buf(),
                row: 1,
                col: 1,
                message: format!(
                    "unrecognized table: first column {:?} (expected timestamp or label)",
                    other.unwrap_or("")
                ),
            })
        }
    };

    let mut labels = Vec::new();
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for_each_row(path, feature_start, |row| {
        let label = row.label(label_col)?.ok_or_else(|| {
            row.bad(label_col, "record is unlabeled but a label is required".into())
        })?;
        let width = row.record.len() - feature_start;
        let mut features = Vec::with_capacity(width);
        for c in 0..width {
            features.push(row.f64(feature_start + c)?);
        }
        labels.push(label);
        rows.push(features);
        Ok(())
    })?;
    if rows.is_empty() {
        return Err(CliError::Other(format!(
            "{} holds no data rows",
            path.display()
        )));
    }
    let features = Matrix::from_rows(&rows)?;
    Ok(LabeledTable { features, labels })
}

/// Writes a balanced table: provenance columns then the feature block.
pub fn write_balanced(
    path: &Path,
    dataset: &statelink_core::balance::BalancedDataset,
) -> Result<()> {
    let width = dataset
        .records
        .first()
        .map_or(0, |r| r.features.len());
    let mut w = writer(path)?;
    let mut header: Vec<String> = BALANCED_HEAD.iter().map(|s| s.to_string()).collect();
    header.extend((0..width).map(|i| format!("f{i}")));
    w.write_record(&header).map_err(|e| csv_err(path, e))?;
    for r in &dataset.records {
        let mut row: Vec<String> = vec![
            r.label.to_string(),
            u8::from(r.is_synthetic()).to_string(),
            r.origin
                .as_ref()
                .map(|o| o.source_index.to_string())
                .unwrap_or_default(),
            r.origin
                .as_ref()
                .map(|o| o.neighbor_index.to_string())
                .unwrap_or_default(),
            r.origin
                .as_ref()
                .map(|o| fmt_f64(o.eta))
                .unwrap_or_default(),
        ];
        row.extend(r.features.iter().map(|&v| fmt_f64(v)));
        w.write_record(&row).map_err(|e| csv_err(path, e))?;
    }
    finish(path, w)
}

// ---------------------------------------------------------------------
// Cluster assignments
// ---------------------------------------------------------------------

pub fn write_cluster_labels(path: &Path, labels: &[u32], outliers: &[bool]) -> Result<()> {
    let mut w = writer(path)?;
    w.write_record(["record_index", "cluster_id", "outlier_flag"])
        .map_err(|e| csv_err(path, e))?;
    for (i, (&l, &o)) in labels.iter().zip(outliers).enumerate() {
        w.write_record([
            i.to_string(),
            l.to_string(),
            u8::from(o).to_string(),
        ])
        .map_err(|e| csv_err(path, e))?;
    }
    finish(path, w)
}

// ---------------------------------------------------------------------
// Predictions
// ---------------------------------------------------------------------

pub struct PredictionTable {
    pub true_labels: Vec<u32>,
    pub predicted: Vec<u32>,
    /// Per-class probabilities when the file carries `p*` columns.
    pub probabilities: Option<Matrix>,
}

pub fn write_predictions(
    path: &Path,
    true_labels: &[u32],
    predicted: &[u32],
    probabilities: &Matrix,
) -> Result<()> {
    let mut w = writer(path)?;
    let mut header = vec![
        "record_index".to_string(),
        "true_label".to_string(),
        "predicted_label".to_string(),
    ];
    header.extend((0..probabilities.cols()).map(|k| format!("p{k}")));
    w.write_record(&header).map_err(|e| csv_err(path, e))?;
    for i in 0..true_labels.len() {
        let mut row = vec![
            i.to_string(),
            true_labels[i].to_string(),
            predicted[i].to_string(),
        ];
        row.extend((0..probabilities.cols()).map(|k| fmt_f64(probabilities.get(i, k))));
        w.write_record(&row).map_err(|e| csv_err(path, e))?;
    }
    finish(path, w)
}

pub fn read_predictions(path: &Path) -> Result<PredictionTable> {
    let head = ["record_index", "true_label", "predicted_label"];
    let mut true_labels = Vec::new();
    let mut predicted = Vec::new();
    let mut proba_rows: Vec<Vec<f64>> = Vec::new();
    let header = for_each_row(path, head.len(), |row| {
        true_labels.push(row.label(1)?.ok_or_else(|| {
            row.bad(1, "record is unlabeled but a label is required".into())
        })?);
        predicted.push(row.label(2)?.ok_or_else(|| {
            row.bad(2, "record is unlabeled but a label is required".into())
        })?);
        let extra = row.record.len() - head.len();
        let mut p = Vec::with_capacity(extra);
        for c in 0..extra {
            p.push(row.f64(head.len() + c)?);
        }
        proba_rows.push(p);
        Ok(())
    })?;
    check_head(path, &header, &head)?;
    if true_labels.is_empty() {
        return Err(CliError::Other(format!(
            "{} holds no data rows",
            path.display()
        )));
    }
    let probabilities = if proba_rows.first().map_or(0, Vec::len) > 0 {
        Some(Matrix::from_rows(&proba_rows)?)
    } else {
        None
    };
    Ok(PredictionTable {
        true_labels,
        predicted,
        probabilities,
    })
}

// ---------------------------------------------------------------------
// Curves and traces
// ---------------------------------------------------------------------

pub fn write_loss_trace(path: &Path, trace: &[f64]) -> Result<()> {
    let mut w = writer(path)?;
    w.write_record(["iteration", "loss"])
        .map_err(|e| csv_err(path, e))?;
    for (i, &loss) in trace.iter().enumerate() {
        w.write_record([i.to_string(), fmt_f64(loss)])
            .map_err(|e| csv_err(path, e))?;
    }
    finish(path, w)
}

pub fn write_roc(path: &Path, curves: &[RocCurve]) -> Result<()> {
    let mut w = writer(path)?;
    w.write_record(["class", "threshold", "false_positive_rate", "true_positive_rate"])
        .map_err(|e| csv_err(path, e))?;
    for (k, curve) in curves.iter().enumerate() {
        for p in &curve.points {
            w.write_record([
                k.to_string(),
                fmt_f64(p.threshold),
                fmt_f64(p.false_positive_rate),
                fmt_f64(p.true_positive_rate),
            ])
            .map_err(|e| csv_err(path, e))?;
        }
    }
    finish(path, w)
}

pub fn write_pr(path: &Path, curves: &[PrCurve]) -> Result<()> {
    let mut w = writer(path)?;
    w.write_record(["class", "threshold", "recall", "precision"])
        .map_err(|e| csv_err(path, e))?;
    for (k, curve) in curves.iter().enumerate() {
        for p in &curve.points {
            w.write_record([
                k.to_string(),
                fmt_f64(p.threshold),
                fmt_f64(p.recall),
                fmt_f64(p.precision),
            ])
            .map_err(|e| csv_err(path, e))?;
        }
    }
    finish(path, w)
}

// ---------------------------------------------------------------------
// Raw telemetry for fusion
// ---------------------------------------------------------------------

/// Key grouping raw cyber rows into sampling instants.
pub type InstantKey = (u64, String);

fn instant(ts: f64, ip: &str) -> InstantKey {
    (ts.to_bits(), ip.to_string())
}

pub struct RawCyber {
    /// (timestamp bits, ip) -> rows, insertion-ordered deterministically.
    pub stats: std::collections::BTreeMap<InstantKey, Vec<LinkPacketStats>>,
    pub timings: std::collections::BTreeMap<InstantKey, Vec<PacketTiming>>,
    pub alarms: std::collections::BTreeMap<InstantKey, Vec<f64>>,
}

/// `timestamp,ip,link_id,packets_sent,packets_lost,loss_threshold`
pub fn read_stats(path: &Path) -> Result<std::collections::BTreeMap<InstantKey, Vec<LinkPacketStats>>> {
    let head = ["timestamp", "ip", "link_id", "packets_sent", "packets_lost", "loss_threshold"];
    let mut out: std::collections::BTreeMap<InstantKey, Vec<LinkPacketStats>> = Default::default();
    let header = for_each_row(path, head.len(), |row| {
        let ts = row.f64(0)?;
        let ip = row.string(1)?;
        out.entry(instant(ts, &ip)).or_default().push(LinkPacketStats {
            link_id: row.string(2)?,
            packets_sent: row.u64(3)?,
            packets_lost: row.u64(4)?,
            loss_threshold: row.f64(5)?,
        });
        Ok(())
    })?;
    check_head(path, &header, &head)?;
    Ok(out)
}

/// `timestamp,ip,packet_id,send_time,receive_time`
pub fn read_timings(path: &Path) -> Result<std::collections::BTreeMap<InstantKey, Vec<PacketTiming>>> {
    let head = ["timestamp", "ip", "packet_id", "send_time", "receive_time"];
    let mut out: std::collections::BTreeMap<InstantKey, Vec<PacketTiming>> = Default::default();
    let header = for_each_row(path, head.len(), |row| {
        let ts = row.f64(0)?;
        let ip = row.string(1)?;
        out.entry(instant(ts, &ip)).or_default().push(PacketTiming {
            packet_id: row.string(2)?,
            send_time: row.f64(3)?,
            receive_time: row.f64(4)?,
        });
        Ok(())
    })?;
    check_head(path, &header, &head)?;
    Ok(out)
}

/// `timestamp,ip,threat_degree`
pub fn read_alarms(path: &Path) -> Result<std::collections::BTreeMap<InstantKey, Vec<f64>>> {
    let head = ["timestamp", "ip", "threat_degree"];
    let mut out: std::collections::BTreeMap<InstantKey, Vec<f64>> = Default::default();
    let header = for_each_row(path, head.len(), |row| {
        let ts = row.f64(0)?;
        let ip = row.string(1)?;
        out.entry(instant(ts, &ip)).or_default().push(row.f64(2)?);
        Ok(())
    })?;
    check_head(path, &header, &head)?;
    Ok(out)
}

/// `timestamp,device_id,a0,a1,...`
pub fn read_physical(path: &Path) -> Result<Vec<PhysicalSnapshot>> {
    let head = ["timestamp", "device_id"];
    let mut out = Vec::new();
    let header = for_each_row(path, head.len(), |row| {
        let width = row.record.len() - head.len();
        let mut attributes = Vec::with_capacity(width);
        for c in 0..width {
            attributes.push(row.f64(head.len() + c)?);
        }
        out.push(PhysicalSnapshot {
            timestamp: row.f64(0)?,
            device_id: row.string(1)?,
            attributes,
        });
        Ok(())
    })?;
    check_head(path, &header, &head)?;
    Ok(out)
}

/// `area,line,component_id,ip`
pub fn read_index(path: &Path) -> Result<IndexTable> {
    let head = ["area", "line", "component_id", "ip"];
    let mut rows = Vec::new();
    let header = for_each_row(path, head.len(), |row| {
        rows.push(IndexRow {
            area: row.string(0)?,
            line: row.string(1)?,
            component_id: row.string(2)?,
            ip: row.string(3)?,
        });
        Ok(())
    })?;
    check_head(path, &header, &head)?;
    IndexTable::new(rows).map_err(|e| CliError::Config(e.to_string()))
}

/// Combines the three raw tables into cyber snapshots, one per
/// (timestamp, ip) instant that appears in all three. Returns the
/// snapshots and the count of incomplete instants skipped.
pub fn assemble_cyber(raw: &RawCyber) -> Result<(Vec<statelink_core::datalink::CyberSnapshot>, usize)> {
    use statelink_core::datalink::{
        compute_delay_ratio, compute_loss_ratio, compute_threat_degree, CyberSnapshot,
    };
    let mut snapshots = Vec::new();
    let mut incomplete = 0usize;
    for (key, stats) in &raw.stats {
        let (Some(timings), Some(threats)) = (raw.timings.get(key), raw.alarms.get(key)) else {
            incomplete += 1;
            continue;
        };
        let group = AlarmGroup {
            ip: key.1.clone(),
            threat_degrees: threats.clone(),
        };
        snapshots.push(CyberSnapshot {
            timestamp: f64::from_bits(key.0),
            ip: key.1.clone(),
            delay_ratio: compute_delay_ratio(stats)?,
            loss_ratio: compute_loss_ratio(timings)?,
            threat_degree: compute_threat_degree(&group)?,
        });
    }
    incomplete += raw.timings.keys().filter(|k| !raw.stats.contains_key(*k)).count();
    incomplete += raw
        .alarms
        .keys()
        .filter(|k| !raw.stats.contains_key(*k) && !raw.timings.contains_key(*k))
        .count();
    Ok((snapshots, incomplete))
}
