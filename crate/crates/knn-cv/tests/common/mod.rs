//! Shared generators and exhaustive-search oracles for the test suites.
//!
//! The oracles here deliberately avoid the crate's search structures:
//! they sort the full candidate list under the (squared distance, row)
//! total order and take prefixes.

#![allow(dead_code)]

use knn_cv::Dataset;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_inputs(rng: &mut ChaCha8Rng, n: usize, dim: usize) -> Vec<Vec<f64>> {
    (0..n)
        .map(|_| (0..dim).map(|_| rng.gen_range(-10.0..10.0)).collect())
        .collect()
}

/// Smooth multi-output response plus bounded noise; continuous draws make
/// exact distance ties vanishingly unlikely.
pub fn random_dataset(rng: &mut ChaCha8Rng, n: usize, dim: usize, out_dim: usize) -> Dataset {
    let inputs = random_inputs(rng, n, dim);
    let outputs = inputs
        .iter()
        .map(|x| {
            (0..out_dim)
                .map(|m| {
                    let s: f64 = x.iter().sum();
                    (s / (m + 1) as f64).sin() + 0.1 * rng.gen_range(-1.0..1.0)
                })
                .collect()
        })
        .collect();
    Dataset::new(inputs, outputs).expect("generated data is valid")
}

fn d2(a: &[f64], b: &[f64]) -> f64 {
    let mut acc = 0.0;
    for i in 0..a.len() {
        let diff = a[i] - b[i];
        acc += diff * diff;
    }
    acc
}

/// Exhaustive k-NN under the (squared distance, row index) total order.
pub fn oracle_knn(points: &[Vec<f64>], query: &[f64], k: usize) -> (Vec<usize>, Vec<f64>) {
    let mut order: Vec<(f64, usize)> = points
        .iter()
        .enumerate()
        .map(|(row, p)| (d2(p, query), row))
        .collect();
    order.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    order.truncate(k);
    (
        order.iter().map(|&(_, row)| row).collect(),
        order.iter().map(|&(d, _)| d.sqrt()).collect(),
    )
}

/// Exhaustive k-NN with one row removed, original indices preserved.
pub fn oracle_knn_excluding(
    points: &[Vec<f64>],
    query: &[f64],
    k: usize,
    excluded: usize,
) -> (Vec<usize>, Vec<f64>) {
    let mut order: Vec<(f64, usize)> = points
        .iter()
        .enumerate()
        .filter(|&(row, _)| row != excluded)
        .map(|(row, p)| (d2(p, query), row))
        .collect();
    order.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    order.truncate(k);
    (
        order.iter().map(|&(_, row)| row).collect(),
        order.iter().map(|&(d, _)| d.sqrt()).collect(),
    )
}
