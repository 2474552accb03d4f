//! `knncv validate` — check that the brute and fast LOOCV routes agree
//! on a dataset, and explain any disagreement via the tie report.
//!
//! Exit codes: 0 when the tie-breaking assumption holds and the scores
//! coincide within tolerance; 1 when the assumption is violated (the
//! routes may legitimately differ there); 4 when the assumption holds
//! but the scores diverge — an implementation bug.

use clap::Args;
use knn_cv::{detect_ties, loocv_sweep, SweepMethod, SweepResult};

use crate::opts::{resolve_k_range, DataOpts};
use crate::CliError;

#[derive(Args, Debug)]
pub struct ValidateArgs {
    #[command(flatten)]
    pub data: DataOpts,

    /// Lower end of the k range.
    #[arg(long, default_value_t = 1)]
    pub k_min: usize,

    /// Upper end of the k range; min(50, n−1) when omitted.
    #[arg(long)]
    pub k_max: Option<usize>,

    /// Maximum tolerated relative discrepancy between the two routes.
    #[arg(long, default_value_t = 1e-10)]
    pub tolerance: f64,

    /// Self-test hook: multiply every efficient score by (1 + ε) to
    /// exercise the divergence detector.
    #[arg(long, hide = true, default_value_t = 0.0)]
    pub inject_efficient_error: f64,
}

pub fn run(args: &ValidateArgs) -> Result<u8, CliError> {
    if !args.tolerance.is_finite() || args.tolerance < 0.0 {
        return Err(CliError::config("--tolerance: must be a finite value >= 0"));
    }
    let dataset = args.data.load()?;
    let (k_min, k_max) = resolve_k_range(args.k_min, args.k_max, dataset.len())?;

    let report = detect_ties(&dataset);
    let mut sweep =
        loocv_sweep(&dataset, k_min, k_max, SweepMethod::Both).map_err(CliError::from_lib)?;
    if args.inject_efficient_error != 0.0 {
        corrupt_efficient_scores(&mut sweep, args.inject_efficient_error);
    }
    let max_rel = sweep.max_rel_discrepancy().unwrap_or(0.0);

    println!("rows: {}", dataset.len());
    println!(
        "duplicate groups: {} ({} rows)",
        report.duplicate_groups.len(),
        report.duplicate_row_count()
    );
    match report.tie_triples_evaluated {
        true => println!("distance-tie triples: {}", report.tie_triple_total),
        false => println!("distance-tie triples: not evaluated (dataset above scan cap)"),
    }
    println!(
        "max relative discrepancy over k in [{k_min}, {k_max}]: {max_rel:e} (tolerance {:e})",
        args.tolerance
    );

    if !report.assumption_holds {
        println!("tie-breaking assumption: violated");
        println!("the fast route is not exact on this data; scores may legitimately differ");
        println!("consider `knncv dedupe` to collapse duplicate inputs");
        return Ok(1);
    }
    println!("tie-breaking assumption: holds");
    if max_rel <= args.tolerance {
        println!("brute and efficient LOOCV coincide within tolerance");
        Ok(0)
    } else {
        println!("divergence despite the assumption holding: implementation bug");
        Ok(4)
    }
}

/// Perturbs the efficient scores and recomputes the per-k discrepancies.
fn corrupt_efficient_scores(sweep: &mut SweepResult, epsilon: f64) {
    for entry in &mut sweep.entries {
        if let Some(efficient) = &mut entry.efficient {
            efficient.score *= 1.0 + epsilon;
            if let Some(brute) = &entry.brute {
                let abs = (brute.score - efficient.score).abs();
                entry.abs_discrepancy = Some(abs);
                entry.rel_discrepancy =
                    Some(abs / brute.score.max(knn_cv::loocv::RELATIVE_EPSILON));
            }
        }
    }
}
