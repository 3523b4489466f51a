//! CSV and JSON formats.
//!
//! All CSV output is comma-separated with a header row and LF line endings.
//! Floats are written with Rust's shortest round-trip formatting, so reading
//! a file back reproduces every value bit for bit.
//!
//! Grid files mix two record kinds under the header `kind,value,max,resolution`:
//! one `axis,<min>,<max>,<resolution>` row per axis, followed by one
//! `cell,<probability>` row per cell in row-major order (last axis fastest).

use std::io::{Read, Write};

use anyhow::{bail, Context, Result};
use driftbound_core::discrepancy::{Axis, GridDistribution, MomentMatrix};
use driftbound_core::erm::TrackingResult;
use driftbound_core::harness::{DriftData, ExperimentRow};

pub fn csv_writer<W: Write>(w: W) -> csv::Writer<W> {
    csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(w)
}

fn csv_reader<R: Read>(r: R, flexible: bool) -> csv::Reader<R> {
    csv::ReaderBuilder::new().flexible(flexible).trim(csv::Trim::All).from_reader(r)
}

fn num(v: f64) -> String {
    format!("{v}")
}

fn parse_f64(field: &str, line: u64) -> Result<f64> {
    field.parse::<f64>().with_context(|| format!("line {line}: `{field}` is not a number"))
}

fn line_of(rec: &csv::StringRecord) -> u64 {
    rec.position().map_or(0, csv::Position::line)
}

pub fn write_experiment_rows<W: Write>(w: W, rows: &[ExperimentRow]) -> Result<()> {
    let mut out = csv_writer(w);
    out.write_record(["algorithm", "T", "trials", "mean_mse", "stderr", "mean_clipped_mse", "seed"])?;
    for r in rows {
        out.write_record([
            r.algorithm.name().to_string(),
            r.horizon.to_string(),
            r.trials.to_string(),
            num(r.mean_mse),
            num(r.stderr),
            num(r.mean_clipped_mse),
            r.seed.to_string(),
        ])?;
    }
    out.flush()?;
    Ok(())
}

pub fn write_tracking_rows<W: Write>(w: W, rows: &[TrackingResult]) -> Result<()> {
    let mut out = csv_writer(w);
    out.write_record(["delta", "m", "T", "trials", "gap", "stderr", "seed"])?;
    for r in rows {
        out.write_record([
            num(r.delta),
            r.m.to_string(),
            r.horizon.to_string(),
            r.trials.to_string(),
            num(r.gap),
            num(r.stderr),
            r.seed.to_string(),
        ])?;
    }
    out.flush()?;
    Ok(())
}

/// Training rows (`split = train`, with `disc(D_t, D_{T+1})`) followed by test
/// rows (`split = test`, drawn from `D_{T+1}`, so their discrepancy is 0).
pub fn write_drift_data<W: Write>(w: W, data: &DriftData) -> Result<()> {
    let mut out = csv_writer(w);
    out.write_record(["split", "t", "x0", "x1", "y", "disc"])?;
    let train = data.sample.examples().iter().zip(data.profile.values());
    for (t, (e, d)) in train.enumerate() {
        out.write_record(["train".into(), (t + 1).to_string(), num(e.x()[0]), num(e.x()[1]), num(e.y()), num(*d)])?;
    }
    let next = data.sample.len() + 1;
    for e in &data.test {
        out.write_record(["test".into(), next.to_string(), num(e.x()[0]), num(e.x()[1]), num(e.y()), num(0.0)])?;
    }
    out.flush()?;
    Ok(())
}

pub fn write_grid<W: Write>(w: W, grid: &GridDistribution) -> Result<()> {
    let mut out = csv_writer(w);
    out.write_record(["kind", "value", "max", "resolution"])?;
    for a in grid.axes() {
        out.write_record(["axis".into(), num(a.min), num(a.max), a.resolution.to_string()])?;
    }
    let mut flex = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .has_headers(false)
        .flexible(true)
        .from_writer(out.into_inner().map_err(|e| anyhow::anyhow!("{}", e.error()))?);
    for p in grid.probabilities() {
        flex.write_record(["cell".into(), num(*p)])?;
    }
    flex.flush()?;
    Ok(())
}

pub fn read_grid<R: Read>(r: R) -> Result<GridDistribution> {
    let mut axes = Vec::new();
    let mut probabilities = Vec::new();
    for rec in csv_reader(r, true).records() {
        let rec = rec?;
        let line = line_of(&rec);
        match (rec.get(0), rec.len()) {
            (Some("axis"), 4) => {
                if !probabilities.is_empty() {
                    bail!("line {line}: axis rows must precede cell rows");
                }
                let res = rec[3].parse::<usize>().with_context(|| format!("line {line}: bad resolution"))?;
                axes.push(Axis::new(parse_f64(&rec[1], line)?, parse_f64(&rec[2], line)?, res)?);
            }
            (Some("cell"), 2) => probabilities.push(parse_f64(&rec[1], line)?),
            _ => bail!("line {line}: expected an `axis` row with 3 values or a `cell` row with 1"),
        }
    }
    Ok(GridDistribution::new(axes, probabilities)?)
}

/// Numeric table with a header row; returns the rows.
fn read_table<R: Read>(r: R) -> Result<Vec<Vec<f64>>> {
    let mut rows = Vec::new();
    for rec in csv_reader(r, false).records() {
        let rec = rec?;
        let line = line_of(&rec);
        rows.push(rec.iter().map(|f| parse_f64(f, line)).collect::<Result<Vec<_>>>()?);
    }
    Ok(rows)
}

/// Square matrix of second moments, one row per line, with a header row.
pub fn read_moments<R: Read>(r: R) -> Result<MomentMatrix> {
    Ok(MomentMatrix::from_rows(&read_table(r)?)?)
}

pub fn write_moments<W: Write>(w: W, m: &MomentMatrix) -> Result<()> {
    let mut out = csv_writer(w);
    out.write_record((0..m.dim()).map(|j| format!("m{j}")))?;
    for i in 0..m.dim() {
        out.write_record((0..m.dim()).map(|j| num(m.get(i, j))))?;
    }
    out.flush()?;
    Ok(())
}

/// Points, one per row. Columns named `x0, x1, ...` are used when present
/// (so sample files from `simulate` work directly), otherwise every column.
pub fn read_points<R: Read>(r: R) -> Result<Vec<Vec<f64>>> {
    let mut reader = csv_reader(r, false);
    let headers = reader.headers()?.clone();
    let xcols: Vec<usize> = headers
        .iter()
        .enumerate()
        .filter(|(_, h)| h.strip_prefix('x').is_some_and(|d| !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit())))
        .map(|(i, _)| i)
        .collect();
    let cols: Vec<usize> = if xcols.is_empty() { (0..headers.len()).collect() } else { xcols };
    let mut points = Vec::new();
    for rec in reader.records() {
        let rec = rec?;
        let line = line_of(&rec);
        points.push(cols.iter().map(|&c| parse_f64(&rec[c], line)).collect::<Result<Vec<_>>>()?);
    }
    Ok(points)
}

/// Single-column cost table with header `cost`.
pub fn read_costs<R: Read>(r: R) -> Result<Vec<f64>> {
    let rows = read_table(r)?;
    if rows.iter().any(|row| row.len() != 1) {
        bail!("cost files have exactly one column");
    }
    Ok(rows.into_iter().map(|row| row[0]).collect())
}

/// Pretty JSON followed by a newline.
pub fn write_json<W: Write, T: serde::Serialize>(mut w: W, value: &T) -> Result<()> {
    serde_json::to_writer_pretty(&mut w, value)?;
    w.write_all(b"\n")?;
    Ok(())
}
