//! CSV serialization of traces, bound reports, lemma sweeps, and witnesses.
//!
//! Every file starts with a `#` comment line naming the generator, the seed,
//! and the command. Floats are written in shortest round-trip form.

use std::io::{Read, Write};

use crate::adversaries::LowerBoundWitness;
use crate::bounds::BoundReport;
use crate::error::{config, Result};
use crate::onedim::LemmaPoint;
use crate::rng::RNG_ALGORITHM;
use crate::trace::Trace;

/// Provenance written as the first line of every CSV.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CsvHeader {
    pub seed: u64,
    pub command: String,
}

impl CsvHeader {
    pub fn new(seed: u64, command: impl Into<String>) -> Self {
        Self {
            seed,
            command: command.into(),
        }
    }

    fn write_to(&self, w: &mut impl Write) -> Result<()> {
        writeln!(w, "# rng={} seed={} command={}", RNG_ALGORITHM, self.seed, self.command)?;
        Ok(())
    }
}

/// Shortest decimal that parses back to the same `f64`.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:?}")
}

fn writer<W: Write>(w: W) -> csv::Writer<W> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .flexible(true)
        .from_writer(w)
}

fn finish<W: Write>(w: csv::Writer<W>) -> Result<()> {
    let mut inner = w.into_inner().map_err(|e| e.into_error())?;
    inner.flush()?;
    Ok(())
}

/// `round,x,g,reward_cum`, rounds counted from 1.
pub fn write_trace_1d<W: Write>(mut w: W, header: &CsvHeader, trace: &Trace<f64>) -> Result<()> {
    header.write_to(&mut w)?;
    let mut csv = writer(w);
    csv.write_record(["round", "x", "g", "reward_cum"])?;
    let running = trace.running_rewards();
    for (t, ((x, g), r)) in trace.plays().iter().zip(trace.gradients()).zip(running).enumerate() {
        csv.write_record([(t + 1).to_string(), fmt_f64(*x), fmt_f64(*g), fmt_f64(r)])?;
    }
    finish(csv)
}

/// `round,coord,x,g`, one row per (round, coordinate), then
/// `summary,,<total reward>,`.
pub fn write_trace_nd<W: Write>(mut w: W, header: &CsvHeader, trace: &Trace<Vec<f64>>) -> Result<()> {
    header.write_to(&mut w)?;
    let mut csv = writer(w);
    csv.write_record(["round", "coord", "x", "g"])?;
    for (t, (x, g)) in trace.plays().iter().zip(trace.gradients()).enumerate() {
        for (i, (xi, gi)) in x.iter().zip(g).enumerate() {
            csv.write_record([(t + 1).to_string(), (i + 1).to_string(), fmt_f64(*xi), fmt_f64(*gi)])?;
        }
    }
    csv.write_record(["summary".to_string(), String::new(), fmt_f64(trace.cumulative_reward()), String::new()])?;
    finish(csv)
}

/// How a bound row is judged.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CheckKind {
    /// `measured <= bound`, i.e. `slack >= -tolerance`.
    Upper,
    /// `measured == bound` within a relative tolerance.
    Identity,
    /// Written out but never judged.
    Reported,
}

/// One row of a bound-report CSV.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundRow {
    pub algorithm: String,
    pub sequence: String,
    pub comparator: String,
    pub report: BoundReport,
    pub kind: CheckKind,
}

impl BoundRow {
    /// `None` for rows that are only reported.
    pub fn passed(&self, tolerance: f64) -> Option<bool> {
        let r = &self.report;
        match self.kind {
            CheckKind::Upper => Some(r.holds(tolerance)),
            CheckKind::Identity => Some(r.slack.abs() <= tolerance * r.bound.abs().max(1.0)),
            CheckKind::Reported => None,
        }
    }
}

/// `algorithm,sequence,comparator,measured,bound_name,bound,slack`.
pub fn write_bound_rows<W: Write>(mut w: W, header: &CsvHeader, rows: &[BoundRow]) -> Result<()> {
    header.write_to(&mut w)?;
    let mut csv = writer(w);
    csv.write_record(["algorithm", "sequence", "comparator", "measured", "bound_name", "bound", "slack"])?;
    for row in rows {
        csv.write_record([
            row.algorithm.clone(),
            row.sequence.clone(),
            row.comparator.clone(),
            fmt_f64(row.report.measured),
            row.report.name.clone(),
            fmt_f64(row.report.bound),
            fmt_f64(row.report.slack),
        ])?;
    }
    finish(csv)
}

/// `lemma,tau,G,g,lhs,rhs,margin`.
pub fn write_lemma_points<W: Write>(mut w: W, header: &CsvHeader, points: &[LemmaPoint]) -> Result<()> {
    header.write_to(&mut w)?;
    let mut csv = writer(w);
    csv.write_record(["lemma", "tau", "G", "g", "lhs", "rhs", "margin"])?;
    for p in points {
        csv.write_record([
            p.lemma.to_string(),
            fmt_f64(p.tau),
            fmt_f64(p.g_abs),
            fmt_f64(p.g),
            fmt_f64(p.lhs),
            fmt_f64(p.rhs),
            fmt_f64(p.margin),
        ])?;
    }
    finish(csv)
}

/// `index,g`, rounds counted from 1.
pub fn write_witness<W: Write>(mut w: W, header: &CsvHeader, witness: &LowerBoundWitness) -> Result<()> {
    header.write_to(&mut w)?;
    let mut csv = writer(w);
    csv.write_record(["index", "g"])?;
    for (t, g) in witness.sequence.iter().enumerate() {
        csv.write_record([(t + 1).to_string(), fmt_f64(*g)])?;
    }
    finish(csv)
}

/// The plain-text block `G=..., Q=..., k=..., regret=...`.
pub fn witness_summary(witness: &LowerBoundWitness) -> String {
    format!(
        "G={}, Q={}, k={}, regret={}",
        fmt_f64(witness.g_sum),
        fmt_f64(witness.reward),
        witness.k,
        fmt_f64(witness.regret_achieved)
    )
}

/// Writes any table with a header row; used for the comparison table.
pub fn write_table<W: Write>(mut w: W, header: &CsvHeader, columns: &[&str], rows: &[Vec<String>]) -> Result<()> {
    header.write_to(&mut w)?;
    let mut csv = writer(w);
    csv.write_record(columns)?;
    for row in rows {
        csv.write_record(row)?;
    }
    finish(csv)
}

/// Reads a gradient file: one round per line, comma-separated coordinates.
///
/// Lines starting with `#` and blank lines are skipped. An optional header
/// row is recognized by being non-numeric; if it names a `g` column, only
/// that column is read (so trace and witness files can be fed back).
pub fn read_gradient_rows<R: Read>(reader: R) -> Result<Vec<Vec<f64>>> {
    let mut csv = csv::ReaderBuilder::new()
        .has_headers(false)
        .comment(Some(b'#'))
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let mut rows = Vec::new();
    let mut column: Option<usize> = None;
    let mut width: Option<usize> = None;
    for (line, record) in csv.records().enumerate() {
        let record = record?;
        if record.iter().all(str::is_empty) {
            continue;
        }
        let parsed: std::result::Result<Vec<f64>, _> = record.iter().map(str::parse::<f64>).collect();
        let values = match parsed {
            Ok(v) => v,
            Err(_) if rows.is_empty() && column.is_none() && width.is_none() => {
                column = record.iter().position(|h| h == "g");
                width = Some(0);
                continue;
            }
            Err(e) => return Err(config(format!("gradient file record {}: {e}", line + 1))),
        };
        let values = match column {
            Some(c) => vec![*values
                .get(c)
                .ok_or_else(|| config(format!("gradient file record {} has no `g` column", line + 1)))?],
            None => values,
        };
        if let Some(first) = rows.first().map(Vec::len) {
            if values.len() != first {
                return Err(config(format!(
                    "gradient file record {} has {} values, expected {first}",
                    line + 1,
                    values.len()
                )));
            }
        }
        rows.push(values);
    }
    Ok(rows)
}
