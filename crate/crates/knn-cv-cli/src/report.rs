//! Tabular result emission: CSV or versioned JSON (`schema: 1`), both
//! with round-trip-exact floats.

use std::fs::File;
use std::io::{self, BufWriter, Write};

use serde::Serialize;

use crate::opts::{Format, OutputOpts};
use crate::CliError;

/// One per-k score row of a sweep table. Discrepancy cells are filled on
/// `efficient` rows when both methods ran, empty (CSV) or null (JSON)
/// otherwise.
#[derive(Debug, Clone, Serialize, serde::Deserialize)]
pub struct SweepRecord {
    pub k: usize,
    pub method: String,
    pub score: f64,
    pub fit_count: usize,
    pub abs_discrepancy: Option<f64>,
    pub rel_discrepancy: Option<f64>,
}

/// One timing row of a benchmark table.
#[derive(Debug, Clone, Serialize, serde::Deserialize)]
pub struct BenchRecord {
    pub n: usize,
    pub method: String,
    pub seconds: f64,
}

#[derive(Serialize)]
struct Envelope<'a, T> {
    schema: u32,
    records: &'a [T],
}

/// Writes `records` to the configured sink in the configured format.
pub fn write_records<T: Serialize>(output: &OutputOpts, records: &[T]) -> Result<(), CliError> {
    match &output.out {
        Some(path) => {
            let file = File::create(path).map_err(|e| {
                CliError::data_msg(format!("--out: cannot create {}: {e}", path.display()))
            })?;
            write_to(BufWriter::new(file), output.format, records)
        }
        None => write_to(io::stdout().lock(), output.format, records),
    }
}

fn write_to<W: Write, T: Serialize>(
    mut writer: W,
    format: Format,
    records: &[T],
) -> Result<(), CliError> {
    match format {
        Format::Csv => {
            let mut csv_writer = csv::Writer::from_writer(writer);
            for record in records {
                csv_writer.serialize(record).map_err(CliError::io)?;
            }
            csv_writer
                .flush()
                .map_err(|e| CliError::io(csv::Error::from(e)))?;
        }
        Format::Json => {
            let envelope = Envelope { schema: 1, records };
            serde_json::to_writer_pretty(&mut writer, &envelope)
                .map_err(|e| CliError::data_msg(format!("failed to write JSON: {e}")))?;
            writeln!(writer).map_err(|e| CliError::data_msg(e.to_string()))?;
        }
    }
    Ok(())
}
