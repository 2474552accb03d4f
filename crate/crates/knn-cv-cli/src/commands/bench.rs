//! `knncv bench` — wall-clock timings of the three LOOCV routes across
//! dataset sizes, median over repetitions.
//!
//! Two brute variants are timed so the comparison against the fast
//! route is honest about its baseline: `brute_refit` rebuilds the
//! neighbour index for every held-out row (the naive cost), while
//! `brute_shared` reuses one index with query-time exclusion.

use std::path::PathBuf;

use clap::Args;
use knn_cv::{loocv_brute, loocv_brute_refit, loocv_efficient, standardize, Dataset, LoocvResult};

use crate::opts::OutputOpts;
use crate::report::{write_records, BenchRecord};
use crate::synthgen::{generate, SynthSpec};
use crate::CliError;

type LoocvFn = fn(&Dataset, usize) -> knn_cv::Result<LoocvResult>;

#[derive(Args, Debug)]
pub struct BenchArgs {
    /// Dataset sizes n to benchmark.
    #[arg(long, value_delimiter = ',', default_values_t = [500, 1000, 2000, 4000, 8000])]
    pub sizes: Vec<usize>,

    /// Neighbour count for every timing run.
    #[arg(long, default_value_t = 5)]
    pub k: usize,

    /// Repetitions per (size, method); the median is reported.
    #[arg(long, default_value_t = 5)]
    pub reps: usize,

    /// Seed for the synthetic data (per-size streams are derived from it).
    #[arg(long, default_value_t = 42)]
    pub seed: u64,

    /// Input dimension of the synthetic data.
    #[arg(long, default_value_t = 3)]
    pub dim: usize,

    /// Noise level of the synthetic data.
    #[arg(long, default_value_t = 0.1)]
    pub noise: f64,

    /// Benchmark on prefixes of this CSV instead of synthetic data.
    #[arg(long)]
    pub data: Option<PathBuf>,

    /// Target column(s), required with --data.
    #[arg(long, requires = "data")]
    pub target: Vec<String>,

    /// Feature columns, optional with --data.
    #[arg(long, value_delimiter = ',', requires = "data")]
    pub features: Option<Vec<String>>,

    /// Field delimiter for --data.
    #[arg(long, default_value_t = ',')]
    pub delimiter: char,

    /// Leave features on their original scales.
    #[arg(long)]
    pub no_standardize: bool,

    #[command(flatten)]
    pub output: OutputOpts,
}

pub fn run(args: &BenchArgs) -> Result<u8, CliError> {
    if args.reps == 0 {
        return Err(CliError::config("--reps: must be at least 1"));
    }
    if args.k == 0 {
        return Err(CliError::config("--k: must be at least 1"));
    }
    if args.sizes.is_empty() {
        return Err(CliError::config("--sizes: at least one size required"));
    }
    for &n in &args.sizes {
        if n < args.k + 1 {
            return Err(CliError::config(format!(
                "--sizes: n = {n} too small for k = {} (need n >= k + 1)",
                args.k
            )));
        }
    }

    let file_rows = match &args.data {
        Some(path) => Some(load_file_rows(args, path)?),
        None => None,
    };

    eprintln!(
        "timing LOOCV at k = {} (median of {}); brute_refit rebuilds the index per held-out row, \
         brute_shared reuses one index with query-time exclusion",
        args.k, args.reps
    );

    let mut records = Vec::new();
    for &n in &args.sizes {
        let dataset = dataset_of_size(args, n, file_rows.as_ref())?;
        let variants: [(&str, LoocvFn); 3] = [
            ("brute_refit", loocv_brute_refit),
            ("brute_shared", loocv_brute),
            ("efficient", loocv_efficient),
        ];
        for (name, variant) in variants {
            let mut times = Vec::with_capacity(args.reps);
            for _ in 0..args.reps {
                let result = variant(&dataset, args.k).map_err(CliError::from_lib)?;
                times.push(result.wall_time_secs);
            }
            let seconds = median(&mut times);
            eprintln!("n = {n:>6}  {name:<12} {seconds:.6} s");
            records.push(BenchRecord {
                n,
                method: name.to_owned(),
                seconds,
            });
        }
    }

    write_records(&args.output, &records)?;
    Ok(0)
}

fn load_file_rows(args: &BenchArgs, path: &std::path::Path) -> Result<Dataset, CliError> {
    if args.target.is_empty() {
        return Err(CliError::config("--target: required with --data"));
    }
    if !args.delimiter.is_ascii() {
        return Err(CliError::config(
            "--delimiter: must be a single ASCII character",
        ));
    }
    let targets: Vec<&str> = args.target.iter().map(String::as_str).collect();
    let features: Option<Vec<&str>> = args
        .features
        .as_ref()
        .map(|names| names.iter().map(String::as_str).collect());
    let options = knn_cv::CsvOptions {
        delimiter: args.delimiter as u8,
    };
    knn_cv::load_csv(path, &targets, features.as_deref(), &options).map_err(CliError::data)
}

/// First n rows of the file, or a fresh synthetic dataset; standardized
/// unless disabled.
fn dataset_of_size(
    args: &BenchArgs,
    n: usize,
    file_rows: Option<&Dataset>,
) -> Result<Dataset, CliError> {
    let raw = match file_rows {
        Some(full) => {
            if n > full.len() {
                return Err(CliError::config(format!(
                    "--sizes: n = {n} exceeds the {} rows in the file",
                    full.len()
                )));
            }
            Dataset::new(full.inputs()[..n].to_vec(), full.outputs()[..n].to_vec())
                .map_err(CliError::data)?
        }
        None => generate(&SynthSpec {
            n,
            dim: args.dim,
            outputs: 1,
            noise: args.noise,
            seed: args.seed.wrapping_add(n as u64),
        })?,
    };
    if args.no_standardize {
        return Ok(raw);
    }
    let (standardized, _) = standardize(&raw).map_err(CliError::data)?;
    Ok(standardized)
}

fn median(times: &mut [f64]) -> f64 {
    times.sort_unstable_by(f64::total_cmp);
    let mid = times.len() / 2;
    if times.len() % 2 == 1 {
        times[mid]
    } else {
        0.5 * (times[mid - 1] + times[mid])
    }
}
