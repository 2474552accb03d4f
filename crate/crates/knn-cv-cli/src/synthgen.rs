//! Seeded synthetic regression data: continuous inputs (so the
//! tie-breaking condition holds almost surely) and a fixed smooth
//! response plus Gaussian noise.

use std::io::Write;

use knn_cv::Dataset;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::CliError;

#[derive(Debug, Clone, Copy)]
pub struct SynthSpec {
    pub n: usize,
    pub dim: usize,
    pub outputs: usize,
    pub noise: f64,
    pub seed: u64,
}

/// The noise-free response surface: one smooth scalar field per output
/// component.
fn response(x: &[f64], component: usize) -> f64 {
    let s: f64 = x.iter().sum();
    let weighted: f64 = x.iter().enumerate().map(|(d, v)| (d + 1) as f64 * v).sum();
    (s + component as f64).sin() + 0.5 * (0.5 * weighted).cos()
}

/// Standard normal draw via Box–Muller; deterministic given the rng state.
fn gaussian(rng: &mut ChaCha8Rng) -> f64 {
    let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
    let u2: f64 = rng.gen_range(0.0..1.0);
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}

/// Generates the dataset described by `spec`. Byte-reproducible for a
/// fixed spec.
pub fn generate(spec: &SynthSpec) -> Result<Dataset, CliError> {
    if spec.n == 0 {
        return Err(CliError::config("--n: must be at least 1"));
    }
    if spec.dim == 0 {
        return Err(CliError::config("--dim: must be at least 1"));
    }
    if spec.outputs == 0 {
        return Err(CliError::config("--outputs: must be at least 1"));
    }
    if !spec.noise.is_finite() || spec.noise < 0.0 {
        return Err(CliError::config("--noise: must be a finite value >= 0"));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let inputs: Vec<Vec<f64>> = (0..spec.n)
        .map(|_| (0..spec.dim).map(|_| rng.gen_range(-3.0..3.0)).collect())
        .collect();
    let outputs: Vec<Vec<f64>> = inputs
        .iter()
        .map(|x| {
            (0..spec.outputs)
                .map(|m| response(x, m) + spec.noise * gaussian(&mut rng))
                .collect()
        })
        .collect();
    Dataset::new(inputs, outputs).map_err(CliError::data)
}

/// Writes a dataset as CSV with the given column names. Floats are
/// formatted with the shortest round-trip representation, so repeated
/// runs are byte-identical.
pub fn write_dataset_csv<W: Write>(
    mut writer: W,
    feature_names: &[String],
    target_names: &[String],
    dataset: &Dataset,
) -> std::io::Result<()> {
    let header: Vec<&str> = feature_names
        .iter()
        .chain(target_names)
        .map(String::as_str)
        .collect();
    writeln!(writer, "{}", header.join(","))?;
    for row in 0..dataset.len() {
        let cells: Vec<String> = dataset
            .input(row)
            .iter()
            .chain(dataset.output(row))
            .map(|v| v.to_string())
            .collect();
        writeln!(writer, "{}", cells.join(","))?;
    }
    Ok(())
}

/// Default column names x1..xD / y1..yM.
pub fn default_column_names(dim: usize, outputs: usize) -> (Vec<String>, Vec<String>) {
    (
        (1..=dim).map(|d| format!("x{d}")).collect(),
        (1..=outputs).map(|m| format!("y{m}")).collect(),
    )
}
