//! `knncv diagnose` — print the tie report for a dataset.
//!
//! Exit 0 when the tie-breaking assumption holds, 1 otherwise.

use clap::Args;
use knn_cv::{detect_ties_with, TieScanLimits};

use crate::opts::DataOpts;
use crate::CliError;

#[derive(Args, Debug)]
pub struct DiagnoseArgs {
    #[command(flatten)]
    pub data: DataOpts,

    /// Skip the equidistance scan above this row count.
    #[arg(long, default_value_t = 2000)]
    pub triple_cap: usize,
}

pub fn run(args: &DiagnoseArgs) -> Result<u8, CliError> {
    let dataset = args.data.load()?;
    let limits = TieScanLimits {
        triple_cap: args.triple_cap,
        ..Default::default()
    };
    let report = detect_ties_with(&dataset, &limits);

    println!("rows: {}", dataset.len());
    println!(
        "duplicate groups: {} ({} rows)",
        report.duplicate_groups.len(),
        report.duplicate_row_count()
    );
    for group in report.duplicate_groups.iter().take(5) {
        println!("  rows {group:?} share one input point");
    }
    if report.duplicate_groups.len() > 5 {
        println!(
            "  ... and {} more groups",
            report.duplicate_groups.len() - 5
        );
    }
    match report.tie_triples_evaluated {
        true => println!("distance-tie triples: {}", report.tie_triple_total),
        false => println!(
            "distance-tie triples: not evaluated (n > {}); duplicates checked only",
            args.triple_cap
        ),
    }
    for &(l, i, j) in report.tie_triples.iter().take(5) {
        println!("  rows {i} and {j} are equidistant from row {l}");
    }

    if report.assumption_holds {
        println!("tie-breaking assumption: holds");
        Ok(0)
    } else {
        println!("tie-breaking assumption: violated");
        Ok(1)
    }
}
