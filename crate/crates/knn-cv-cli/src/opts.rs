//! Shared argument groups and dataset loading for the subcommands.

use std::path::PathBuf;

use clap::{Args, ValueEnum};
use knn_cv::{load_csv, standardize, CsvOptions, Dataset, SweepMethod};

use crate::CliError;

/// Dataset source and preprocessing flags shared by the data-driven
/// subcommands.
#[derive(Args, Debug, Clone)]
pub struct DataOpts {
    /// Input CSV file (UTF-8, header row required).
    #[arg(long)]
    pub data: PathBuf,

    /// Target (output) column name; repeat for multiple outputs.
    #[arg(long, required = true)]
    pub target: Vec<String>,

    /// Comma-separated feature column names; defaults to every
    /// non-target column in header order.
    #[arg(long, value_delimiter = ',')]
    pub features: Option<Vec<String>>,

    /// Field delimiter.
    #[arg(long, default_value_t = ',')]
    pub delimiter: char,

    /// Standardize each feature to zero mean and unit variance (on by
    /// default).
    #[arg(long, overrides_with = "no_standardize")]
    pub standardize: bool,

    /// Leave features on their original scales.
    #[arg(long)]
    pub no_standardize: bool,
}

impl DataOpts {
    pub fn standardize_enabled(&self) -> bool {
        !self.no_standardize
    }

    pub fn csv_options(&self) -> Result<CsvOptions, CliError> {
        if !self.delimiter.is_ascii() {
            return Err(CliError::config(
                "--delimiter: must be a single ASCII character",
            ));
        }
        Ok(CsvOptions {
            delimiter: self.delimiter as u8,
        })
    }

    /// Loads the file and applies standardization unless disabled.
    pub fn load(&self) -> Result<Dataset, CliError> {
        let raw = self.load_raw()?;
        if self.standardize_enabled() {
            let (standardized, _) = standardize(&raw).map_err(CliError::data)?;
            Ok(standardized)
        } else {
            Ok(raw)
        }
    }

    /// Loads the file without any preprocessing.
    pub fn load_raw(&self) -> Result<Dataset, CliError> {
        let options = self.csv_options()?;
        let targets: Vec<&str> = self.target.iter().map(String::as_str).collect();
        let features: Option<Vec<&str>> = self
            .features
            .as_ref()
            .map(|names| names.iter().map(String::as_str).collect());
        load_csv(&self.data, &targets, features.as_deref(), &options).map_err(CliError::data)
    }
}

/// Where and how tabular results are written.
#[derive(Args, Debug, Clone)]
pub struct OutputOpts {
    /// Output file for the result table; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,

    /// Output format for the result table.
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum MethodArg {
    Brute,
    Efficient,
    Both,
}

impl From<MethodArg> for SweepMethod {
    fn from(value: MethodArg) -> Self {
        match value {
            MethodArg::Brute => SweepMethod::Brute,
            MethodArg::Efficient => SweepMethod::Efficient,
            MethodArg::Both => SweepMethod::Both,
        }
    }
}

/// Resolves the sweep range against the dataset size, naming the
/// offending flag on failure.
pub fn resolve_k_range(
    k_min: usize,
    k_max: Option<usize>,
    n: usize,
) -> Result<(usize, usize), CliError> {
    if n < 2 {
        return Err(CliError::data_msg(format!(
            "--data: dataset has {n} rows; need at least 2 for leave-one-out"
        )));
    }
    if k_min == 0 {
        return Err(CliError::config("--k-min: must be at least 1"));
    }
    let k_max = k_max.unwrap_or_else(|| knn_cv::default_k_max(n));
    if k_max > n - 1 {
        return Err(CliError::config(format!(
            "--k-max: k = {k_max} too large: at most {} neighbours available after holding one row out",
            n - 1
        )));
    }
    if k_min > k_max {
        return Err(CliError::config(format!(
            "--k-min: {k_min} exceeds --k-max ({k_max})"
        )));
    }
    Ok((k_min, k_max))
}
