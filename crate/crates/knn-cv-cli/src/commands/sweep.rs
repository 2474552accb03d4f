//! `knncv sweep` — per-k LOOCV scores over a contiguous k range.

use clap::Args;
use knn_cv::{loocv_sweep, Method, SweepResult};

use crate::opts::{resolve_k_range, DataOpts, MethodArg, OutputOpts};
use crate::report::{write_records, SweepRecord};
use crate::CliError;

#[derive(Args, Debug)]
pub struct SweepArgs {
    #[command(flatten)]
    pub data: DataOpts,

    /// Lower end of the k range.
    #[arg(long, default_value_t = 1)]
    pub k_min: usize,

    /// Upper end of the k range; min(50, n−1) when omitted.
    #[arg(long)]
    pub k_max: Option<usize>,

    /// Which LOOCV route(s) to run.
    #[arg(long, value_enum, default_value_t = MethodArg::Both)]
    pub method: MethodArg,

    #[command(flatten)]
    pub output: OutputOpts,
}

pub fn run(args: &SweepArgs) -> Result<u8, CliError> {
    let dataset = args.data.load()?;
    let (k_min, k_max) = resolve_k_range(args.k_min, args.k_max, dataset.len())?;
    let sweep =
        loocv_sweep(&dataset, k_min, k_max, args.method.into()).map_err(CliError::from_lib)?;

    write_records(&args.output, &sweep_records(&sweep))?;
    if let Some(k) = sweep.best_k_brute {
        eprintln!("best_k (brute) = {k}");
    }
    if let Some(k) = sweep.best_k_efficient {
        eprintln!("best_k (efficient) = {k}");
    }
    Ok(0)
}

/// Flattens a sweep into one record per (k, method); the efficient row
/// carries the per-k discrepancy when both methods ran.
pub fn sweep_records(sweep: &SweepResult) -> Vec<SweepRecord> {
    let mut records = Vec::new();
    for entry in &sweep.entries {
        if let Some(brute) = &entry.brute {
            records.push(SweepRecord {
                k: entry.k,
                method: Method::Brute.as_str().to_owned(),
                score: brute.score,
                fit_count: brute.fit_count,
                abs_discrepancy: None,
                rel_discrepancy: None,
            });
        }
        if let Some(efficient) = &entry.efficient {
            records.push(SweepRecord {
                k: entry.k,
                method: Method::Efficient.as_str().to_owned(),
                score: efficient.score,
                fit_count: efficient.fit_count,
                abs_discrepancy: entry.abs_discrepancy,
                rel_discrepancy: entry.rel_discrepancy,
            });
        }
    }
    records
}
