//! CSV formats.
//!
//! Time series: mandatory header `time,x1,..,xd`, one row per sample, rows
//! sorted by time, comma separated.
//!
//! Log-signatures: header `t_start,t_end,w_1,..` naming every non-empty word
//! up to the truncation degree in layout order, one row per partition
//! interval. Numbers use the shortest representation that round-trips.

use std::io::Read;

use crate::error::{Error, Result};
use crate::path::{LieIncrement, PiecewiseAbelianPath, TimeSeries};
use crate::tensor::{words, TruncTensor};

fn csv_err(e: csv::Error) -> Error {
    match e.kind() {
        csv::ErrorKind::Io(_) => Error::Io(e.to_string()),
        _ => Error::Parse(e.to_string()),
    }
}

fn parse_field(field: &str, row: usize, col: usize) -> Result<f64> {
    field
        .trim()
        .parse::<f64>()
        .map_err(|_| Error::Parse(format!("row {row}, column {col}: cannot parse {field:?}")))
}

pub fn read_series<R: Read>(reader: R) -> Result<TimeSeries> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let headers = rdr.headers().map_err(csv_err)?.clone();
    if headers.get(0) != Some("time") {
        return Err(Error::Parse("first header column must be `time`".into()));
    }
    let dim = headers.len() - 1;
    if dim == 0 {
        return Err(Error::InvalidSeries("no value columns".into()));
    }
    let mut times = Vec::new();
    let mut values = Vec::new();
    for (r, record) in rdr.records().enumerate() {
        let record = record.map_err(csv_err)?;
        let row = r + 2;
        if record.len() != dim + 1 {
            return Err(Error::InvalidSeries(format!(
                "row {row} has {} fields, expected {}",
                record.len(),
                dim + 1
            )));
        }
        times.push(parse_field(&record[0], row, 1)?);
        values.push(
            (1..=dim)
                .map(|c| parse_field(&record[c], row, c + 1))
                .collect::<Result<Vec<_>>>()?,
        );
    }
    TimeSeries::new(times, values)
}

pub fn read_series_file(path: &std::path::Path) -> Result<TimeSeries> {
    let file =
        std::fs::File::open(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    read_series(file)
}

pub fn series_csv(ts: &TimeSeries) -> String {
    let mut out = String::from("time");
    for i in 1..=ts.dim() {
        out.push_str(&format!(",x{i}"));
    }
    out.push('\n');
    for (t, v) in ts.times().iter().zip(ts.values()) {
        out.push_str(&t.to_string());
        for x in v {
            out.push(',');
            out.push_str(&x.to_string());
        }
        out.push('\n');
    }
    out
}

pub fn logsig_csv(p: &PiecewiseAbelianPath) -> String {
    let labels: Vec<String> = words(p.dim(), p.degree())
        .iter()
        .skip(1)
        .map(|w| w.label(p.dim()))
        .collect();
    let mut out = format!("t_start,t_end,{}\n", labels.join(","));
    for inc in p.increments() {
        let (s, t) = inc.span();
        out.push_str(&format!("{s},{t}"));
        for c in &inc.tensor().coeffs()[1..] {
            out.push(',');
            out.push_str(&c.to_string());
        }
        out.push('\n');
    }
    out
}

/// Parses the output of [`logsig_csv`] back into a path.
pub fn read_logsig<R: Read>(reader: R) -> Result<PiecewiseAbelianPath> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let headers = rdr.headers().map_err(csv_err)?.clone();
    if headers.get(0) != Some("t_start") || headers.get(1) != Some("t_end") {
        return Err(Error::Parse(
            "header must start with `t_start,t_end`".into(),
        ));
    }
    let labels: Vec<&str> = headers.iter().skip(2).collect();
    let (dim, degree) = infer_shape(&labels)?;
    let mut partition = Vec::new();
    let mut increments = Vec::new();
    for (r, record) in rdr.records().enumerate() {
        let record = record.map_err(|e| Error::InvalidSeries(e.to_string()))?;
        let row = r + 2;
        let s = parse_field(&record[0], row, 1)?;
        let t = parse_field(&record[1], row, 2)?;
        let mut coeffs = vec![0.0];
        for c in 2..record.len() {
            coeffs.push(parse_field(&record[c], row, c + 1)?);
        }
        if partition.is_empty() {
            partition.push(s);
        }
        partition.push(t);
        increments.push(LieIncrement::new(
            TruncTensor::from_coeffs(dim, degree, coeffs)?,
            (s, t),
        )?);
    }
    PiecewiseAbelianPath::new(partition, increments)
}

fn infer_shape(labels: &[&str]) -> Result<(usize, usize)> {
    for dim in 1..=labels.len() {
        let mut degree = 1;
        loop {
            let expected = crate::tensor::tensor_len(dim, degree) - 1;
            if expected == labels.len() {
                let ok = words(dim, degree)
                    .iter()
                    .skip(1)
                    .zip(labels)
                    .all(|(w, l)| w.label(dim) == *l);
                if ok {
                    return Ok((dim, degree));
                }
                break;
            }
            if expected > labels.len() {
                break;
            }
            degree += 1;
        }
    }
    Err(Error::Parse(
        "log-signature header does not match any word layout".into(),
    ))
}
