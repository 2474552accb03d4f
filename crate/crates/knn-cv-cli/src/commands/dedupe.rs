//! `knncv dedupe` — collapse duplicate inputs by averaging their
//! outputs, writing a cleaned copy of the dataset.
//!
//! Works on the raw file values; standardization flags do not apply
//! here since the output is a dataset file, not a score table.

use std::fs::File;
use std::io::{self, BufWriter};
use std::path::PathBuf;

use clap::Args;
use knn_cv::resolve_duplicates;

use crate::opts::DataOpts;
use crate::synthgen::write_dataset_csv;
use crate::CliError;

#[derive(Args, Debug)]
pub struct DedupeArgs {
    #[command(flatten)]
    pub data: DataOpts,

    /// Output CSV file; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn run(args: &DedupeArgs) -> Result<u8, CliError> {
    let dataset = args.data.load_raw()?;
    let resolved = resolve_duplicates(&dataset);
    let (feature_names, target_names) = column_names(&args.data)?;

    let write_result = match &args.out {
        Some(path) => {
            let file = File::create(path).map_err(|e| {
                CliError::data_msg(format!("--out: cannot create {}: {e}", path.display()))
            })?;
            write_dataset_csv(
                BufWriter::new(file),
                &feature_names,
                &target_names,
                &resolved,
            )
        }
        None => write_dataset_csv(
            io::stdout().lock(),
            &feature_names,
            &target_names,
            &resolved,
        ),
    };
    write_result.map_err(|e| CliError::data_msg(format!("failed to write output: {e}")))?;

    eprintln!(
        "{} rows in, {} rows out ({} duplicate rows collapsed)",
        dataset.len(),
        resolved.len(),
        dataset.len() - resolved.len()
    );
    Ok(0)
}

/// Recovers the output column names from the input header, mirroring the
/// selection logic of the loader: explicit feature list or all
/// non-target columns in header order.
fn column_names(data: &DataOpts) -> Result<(Vec<String>, Vec<String>), CliError> {
    let options = data.csv_options()?;
    let mut reader = csv::ReaderBuilder::new()
        .delimiter(options.delimiter)
        .from_path(&data.data)
        .map_err(CliError::io)?;
    let headers: Vec<String> = reader
        .headers()
        .map_err(CliError::io)?
        .iter()
        .map(str::to_owned)
        .collect();

    let features = match &data.features {
        Some(names) => names.clone(),
        None => headers
            .iter()
            .filter(|h| !data.target.contains(h))
            .cloned()
            .collect(),
    };
    Ok((features, data.target.clone()))
}
