//! Leave-one-out cross-validation for k-NN regression.
//!
//! Two routes to the same number:
//!
//! * [`loocv_brute`] — hold out each row in turn and score the k-NN
//!   prediction on it; n model evaluations.
//! * [`loocv_efficient`] — fit a single (k+1)-NN model on the full data
//!   and rescale its training MSE by ((k+1)/k)².
//!
//! When no two training inputs coincide and no training point is
//! equidistant from two others, the two scores agree exactly (up to
//! floating-point roundoff). Duplicate inputs break that identity, which
//! is why [`crate::data::detect_ties`] exists.
//!
//! [`loocv_brute_refit`] rebuilds the neighbour index for every held-out
//! row instead of sharing one index with query-time exclusion. It
//! computes bit-identical scores and exists so benchmarks can report the
//! cost of the naive baseline honestly.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::Instant;

use rayon::prelude::*;

use crate::data::Dataset;
use crate::error::{Error, Result};
use crate::neighbors::NeighborIndex;
use crate::regression::{squared_error, KnnModel};
use crate::sum::stable_sum;

/// Guard for relative-discrepancy denominators when a score is exactly 0.
pub const RELATIVE_EPSILON: f64 = 1e-300;

/// How a LOOCV score was computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Brute,
    Efficient,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Brute => "brute",
            Method::Efficient => "efficient",
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One LOOCV score with its provenance.
#[derive(Clone, Debug, PartialEq)]
pub struct LoocvResult {
    pub k: usize,
    /// Mean squared leave-one-out prediction error, ≥ 0.
    pub score: f64,
    pub method: Method,
    /// Model fits actually performed: n for the brute path, 1 for the
    /// efficient path. Counted, not assumed.
    pub fit_count: usize,
    /// Wall-clock seconds for the whole computation, index build included.
    pub wall_time_secs: f64,
}

/// The overfitting penalty ((k+1)/k)² that turns the training MSE of a
/// (k+1)-NN model into the LOOCV score for k-NN.
pub fn scaling_factor(k: usize) -> f64 {
    let ratio = (k + 1) as f64 / k as f64;
    ratio * ratio
}

fn validate_loocv_args(dataset: &Dataset, k: usize) -> Result<()> {
    let n = dataset.len();
    if n < 2 {
        return Err(Error::DatasetTooSmall { n, min: 2 });
    }
    if k == 0 {
        return Err(Error::InvalidK);
    }
    if k > n - 1 {
        return Err(Error::KTooLarge { k, max: n - 1 });
    }
    Ok(())
}

/// Brute-force LOOCV: score each row with the k-NN prediction of a model
/// that excludes it. One shared index, query-time exclusion.
///
/// Held-out rows are evaluated in parallel; the per-row squared errors
/// are reduced in an order-independent way, so the score is identical at
/// every thread count.
pub fn loocv_brute(dataset: &Dataset, k: usize) -> Result<LoocvResult> {
    validate_loocv_args(dataset, k)?;
    let start = Instant::now();
    let evaluations = AtomicUsize::new(0);

    let model = KnnModel::fit(dataset, k)?;
    let errors: Vec<f64> = (0..dataset.len())
        .into_par_iter()
        .map(|row| {
            evaluations.fetch_add(1, Ordering::Relaxed);
            let prediction = model
                .predict_loo(row)
                .expect("arguments validated before the row loop");
            squared_error(&prediction, dataset.output(row))
        })
        .collect();
    let score = stable_sum(&errors) / dataset.len() as f64;

    Ok(LoocvResult {
        k,
        score,
        method: Method::Brute,
        fit_count: evaluations.into_inner(),
        wall_time_secs: start.elapsed().as_secs_f64(),
    })
}

/// Brute-force LOOCV that rebuilds the neighbour index from scratch for
/// every held-out row — the naive baseline. Scores are bit-identical to
/// [`loocv_brute`]; only the cost differs.
pub fn loocv_brute_refit(dataset: &Dataset, k: usize) -> Result<LoocvResult> {
    validate_loocv_args(dataset, k)?;
    let start = Instant::now();
    let rebuilds = AtomicUsize::new(0);

    let n = dataset.len();
    let dim = dataset.input_dim();
    let errors: Vec<f64> = (0..n)
        .into_par_iter()
        .map(|held_out| {
            rebuilds.fetch_add(1, Ordering::Relaxed);
            let mut coords = Vec::with_capacity((n - 1) * dim);
            for (row, point) in dataset.inputs().iter().enumerate() {
                if row != held_out {
                    coords.extend_from_slice(point);
                }
            }
            let index = NeighborIndex::from_flat(coords, dim)
                .expect("reduced training set is non-empty and validated");
            let neighbors = index
                .knn(dataset.input(held_out), k)
                .expect("k <= n - 1 was validated");

            // Positions at or past the held-out row map back up by one.
            let m = dataset.output_dim();
            let mut acc = vec![0.0; m];
            for &pos in neighbors.indices() {
                let row = if pos < held_out { pos } else { pos + 1 };
                for (a, y) in acc.iter_mut().zip(dataset.output(row)) {
                    *a += y;
                }
            }
            acc.iter_mut().for_each(|a| *a /= k as f64);
            squared_error(&acc, dataset.output(held_out))
        })
        .collect();
    let score = stable_sum(&errors) / n as f64;

    Ok(LoocvResult {
        k,
        score,
        method: Method::Brute,
        fit_count: rebuilds.into_inner(),
        wall_time_secs: start.elapsed().as_secs_f64(),
    })
}

/// Fast LOOCV: fit (k+1)-NN once on the full data and rescale its
/// training MSE by [`scaling_factor`].
pub fn loocv_efficient(dataset: &Dataset, k: usize) -> Result<LoocvResult> {
    validate_loocv_args(dataset, k)?;
    let start = Instant::now();
    let fits = AtomicUsize::new(0);

    let model = KnnModel::fit(dataset, k + 1)?;
    fits.fetch_add(1, Ordering::Relaxed);
    let score = scaling_factor(k) * model.training_mse();

    Ok(LoocvResult {
        k,
        score,
        method: Method::Efficient,
        fit_count: fits.into_inner(),
        wall_time_secs: start.elapsed().as_secs_f64(),
    })
}

/// Which LOOCV routes a sweep should run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepMethod {
    Brute,
    Efficient,
    Both,
}

impl SweepMethod {
    pub fn runs_brute(self) -> bool {
        matches!(self, SweepMethod::Brute | SweepMethod::Both)
    }

    pub fn runs_efficient(self) -> bool {
        matches!(self, SweepMethod::Efficient | SweepMethod::Both)
    }
}

/// Scores for one k within a sweep. Discrepancy fields are populated
/// only when both methods ran.
#[derive(Clone, Debug)]
pub struct SweepEntry {
    pub k: usize,
    pub brute: Option<LoocvResult>,
    pub efficient: Option<LoocvResult>,
    pub abs_discrepancy: Option<f64>,
    pub rel_discrepancy: Option<f64>,
}

/// Per-k scores over a contiguous k range plus the per-method argmin.
#[derive(Clone, Debug)]
pub struct SweepResult {
    pub entries: Vec<SweepEntry>,
    pub best_k_brute: Option<usize>,
    pub best_k_efficient: Option<usize>,
}

impl SweepResult {
    /// (k, score) pairs for one method, in ascending k.
    pub fn scores(&self, method: Method) -> Vec<(usize, f64)> {
        self.entries
            .iter()
            .filter_map(|e| {
                let r = match method {
                    Method::Brute => e.brute.as_ref(),
                    Method::Efficient => e.efficient.as_ref(),
                };
                r.map(|r| (e.k, r.score))
            })
            .collect()
    }

    /// Largest per-k relative discrepancy, when both methods ran.
    pub fn max_rel_discrepancy(&self) -> Option<f64> {
        self.entries
            .iter()
            .filter_map(|e| e.rel_discrepancy)
            .max_by(f64::total_cmp)
    }

    /// Largest per-k absolute discrepancy, when both methods ran.
    pub fn max_abs_discrepancy(&self) -> Option<f64> {
        self.entries
            .iter()
            .filter_map(|e| e.abs_discrepancy)
            .max_by(f64::total_cmp)
    }
}

/// Default upper end of a sweep: min(50, n − 1).
pub fn default_k_max(n: usize) -> usize {
    (n.saturating_sub(1)).min(50)
}

/// Runs LOOCV for every k in `[k_min, k_max]` with the requested
/// method(s), recording per-k discrepancies when both run.
pub fn loocv_sweep(
    dataset: &Dataset,
    k_min: usize,
    k_max: usize,
    method: SweepMethod,
) -> Result<SweepResult> {
    if k_min == 0 {
        return Err(Error::InvalidK);
    }
    if k_min > k_max {
        return Err(Error::EmptySweep);
    }
    validate_loocv_args(dataset, k_max)?;

    let mut entries = Vec::with_capacity(k_max - k_min + 1);
    for k in k_min..=k_max {
        let brute = method
            .runs_brute()
            .then(|| loocv_brute(dataset, k))
            .transpose()?;
        let efficient = method
            .runs_efficient()
            .then(|| loocv_efficient(dataset, k))
            .transpose()?;
        let (abs, rel) = match (&brute, &efficient) {
            (Some(b), Some(e)) => {
                let abs = (b.score - e.score).abs();
                (Some(abs), Some(abs / b.score.max(RELATIVE_EPSILON)))
            }
            _ => (None, None),
        };
        entries.push(SweepEntry {
            k,
            brute,
            efficient,
            abs_discrepancy: abs,
            rel_discrepancy: rel,
        });
    }

    let result = SweepResult {
        best_k_brute: None,
        best_k_efficient: None,
        entries,
    };
    let best_k_brute = match method.runs_brute() {
        true => Some(select_best_k(&result.scores(Method::Brute))?),
        false => None,
    };
    let best_k_efficient = match method.runs_efficient() {
        true => Some(select_best_k(&result.scores(Method::Efficient))?),
        false => None,
    };
    Ok(SweepResult {
        best_k_brute,
        best_k_efficient,
        ..result
    })
}

/// Smallest k attaining the minimum score.
pub fn select_best_k(scores: &[(usize, f64)]) -> Result<usize> {
    scores
        .iter()
        .min_by(|(ka, sa), (kb, sb)| sa.total_cmp(sb).then(ka.cmp(kb)))
        .map(|&(k, _)| k)
        .ok_or(Error::EmptySweep)
}
