//! `knncv synth` — write a seeded synthetic regression dataset.

use std::fs::File;
use std::io::BufWriter;
use std::path::PathBuf;

use clap::Args;

use crate::synthgen::{default_column_names, generate, write_dataset_csv, SynthSpec};
use crate::CliError;

#[derive(Args, Debug)]
pub struct SynthArgs {
    /// Number of rows.
    #[arg(long, default_value_t = 1000)]
    pub n: usize,

    /// Input dimension D.
    #[arg(long, default_value_t = 3)]
    pub dim: usize,

    /// Output dimension M.
    #[arg(long, default_value_t = 1)]
    pub outputs: usize,

    /// Standard deviation of the Gaussian output noise.
    #[arg(long, default_value_t = 0.1)]
    pub noise: f64,

    /// RNG seed; fixed seed means byte-identical files.
    #[arg(long, default_value_t = 42)]
    pub seed: u64,

    /// Output CSV file.
    #[arg(long)]
    pub out: PathBuf,
}

pub fn run(args: &SynthArgs) -> Result<u8, CliError> {
    let spec = SynthSpec {
        n: args.n,
        dim: args.dim,
        outputs: args.outputs,
        noise: args.noise,
        seed: args.seed,
    };
    let dataset = generate(&spec)?;
    let (feature_names, target_names) = default_column_names(args.dim, args.outputs);

    let file = File::create(&args.out).map_err(|e| {
        CliError::data_msg(format!("--out: cannot create {}: {e}", args.out.display()))
    })?;
    write_dataset_csv(
        BufWriter::new(file),
        &feature_names,
        &target_names,
        &dataset,
    )
    .map_err(|e| CliError::data_msg(format!("failed to write output: {e}")))?;

    eprintln!(
        "wrote {} rows (D = {}, M = {}, noise = {}, seed = {}) to {}",
        args.n,
        args.dim,
        args.outputs,
        args.noise,
        args.seed,
        args.out.display()
    );
    Ok(0)
}
