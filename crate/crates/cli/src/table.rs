//! Reading `(time, value)` paths and writing result tables as CSV or JSON.

use clap::ValueEnum;
use oscvar_core::RealPath;
use serde::Serialize;
use std::fs::File;
use std::io::{self, Read, Write};
use std::path::Path;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// A two-column CSV path; a first line that does not parse as numbers is a header.
pub fn read_path(reader: impl Read) -> Result<RealPath, String> {
    let mut rdr = csv::ReaderBuilder::new().has_headers(false).trim(csv::Trim::All).from_reader(reader);
    let (mut times, mut values) = (Vec::new(), Vec::new());
    for (n, record) in rdr.records().enumerate() {
        let record = record.map_err(|e| format!("input line {}: {e}", n + 1))?;
        if record.len() != 2 {
            return Err(format!("input line {}: expected 2 columns, found {}", n + 1, record.len()));
        }
        match (record[0].parse::<f64>(), record[1].parse::<f64>()) {
            (Ok(t), Ok(v)) => {
                times.push(t);
                values.push(v);
            }
            _ if n == 0 => continue,
            _ => return Err(format!("input line {}: not a number pair: {:?}", n + 1, record)),
        }
    }
    RealPath::new(times, values).map_err(|e| format!("input path: {e}"))
}

pub fn read_path_file(path: &Path) -> Result<RealPath, String> {
    let file = File::open(path).map_err(|e| format!("opening {}: {e}", path.display()))?;
    read_path(file)
}

/// Writes `rows` to `out`, or to stdout when `out` is `None`.
pub fn write_rows<T: Serialize>(rows: &[T], format: Format, out: Option<&Path>) -> Result<(), String> {
    let mut sink: Box<dyn Write> = match out {
        Some(p) => Box::new(File::create(p).map_err(|e| format!("creating {}: {e}", p.display()))?),
        None => Box::new(io::stdout().lock()),
    };
    render(rows, format, &mut sink).map_err(|e| format!("writing output: {e}"))
}

fn render<T: Serialize>(rows: &[T], format: Format, sink: &mut dyn Write) -> Result<(), Box<dyn std::error::Error>> {
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(sink);
            for row in rows {
                w.serialize(row)?;
            }
            w.flush()?;
        }
        Format::Json => {
            serde_json::to_writer_pretty(&mut *sink, rows)?;
            writeln!(sink)?;
        }
    }
    Ok(())
}

/// A single JSON document, whatever the format.
pub fn write_json<T: Serialize>(doc: &T, out: Option<&Path>) -> Result<(), String> {
    let mut sink: Box<dyn Write> = match out {
        Some(p) => Box::new(File::create(p).map_err(|e| format!("creating {}: {e}", p.display()))?),
        None => Box::new(io::stdout().lock()),
    };
    serde_json::to_writer_pretty(&mut sink, doc).map_err(|e| format!("writing output: {e}"))?;
    writeln!(sink).map_err(|e| format!("writing output: {e}"))
}
