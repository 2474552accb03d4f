//! # knn-cv — k-NN regression with fast exact leave-one-out scores
//!
//! Selecting the neighbour count k for k-NN regression usually means
//! leave-one-out cross-validation, and the naive way to get that score
//! fits n models. This crate computes the same number from a single fit:
//! on tie-free training data, the LOOCV score for k-NN equals the
//! training-set MSE of the (k+1)-NN model scaled by ((k+1)/k)²,
//!
//! ```text
//! LOOCV(k) = ((k+1)/k)² · (1/n) Σ_i ‖f̂_{k+1}(x_i) − y_i‖²
//! ```
//!
//! because the k+1 nearest neighbours of a training point within the
//! full set are exactly that point plus its k nearest neighbours with
//! itself removed.
//!
//! Both routes are provided — [`loocv::loocv_brute`] as the n-fit
//! reference and [`loocv::loocv_efficient`] as the single-fit path —
//! together with k-sweeps, best-k selection, and diagnostics
//! ([`data::detect_ties`]) for the duplicate-input case where the
//! shortcut stops being exact.
//!
//! ```
//! use knn_cv::data::Dataset;
//! use knn_cv::loocv::{loocv_brute, loocv_efficient};
//!
//! let ds = Dataset::new(
//!     vec![vec![0.0], vec![1.0], vec![3.0], vec![7.0]],
//!     vec![vec![0.0], vec![1.0], vec![3.0], vec![7.0]],
//! )?;
//! let brute = loocv_brute(&ds, 1)?;
//! let fast = loocv_efficient(&ds, 1)?;
//! assert_eq!(brute.score, 5.5);
//! assert_eq!(fast.score, 5.5);
//! assert_eq!(fast.fit_count, 1);
//! # Ok::<(), knn_cv::Error>(())
//! ```
//!
//! Exact ties (bitwise-equal distances) are broken by ascending row
//! index everywhere, so every query, score, and report is deterministic
//! and independent of thread count.

pub mod data;
pub mod error;
pub mod loocv;
pub mod neighbors;
pub mod regression;

mod sum;

pub use data::{
    detect_ties, detect_ties_with, load_csv, resolve_duplicates, standardize, CsvOptions, Dataset,
    FeatureScale, TieReport, TieScanLimits,
};
pub use error::{Error, Result};
pub use loocv::{
    default_k_max, loocv_brute, loocv_brute_refit, loocv_efficient, loocv_sweep, scaling_factor,
    select_best_k, LoocvResult, Method, SweepEntry, SweepMethod, SweepResult,
};
pub use neighbors::{NeighborIndex, NeighborList};
pub use regression::{predict_loo, KnnModel};
