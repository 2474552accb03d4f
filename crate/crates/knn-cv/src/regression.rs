//! k-NN regression: prediction by neighbour averaging, leave-one-out
//! predictions, and training-set mean square error.
//!
//! Outputs live in R^M, so every prediction is a vector and every error
//! is a squared Euclidean norm over the M components. M = 1 is ordinary
//! scalar regression.

use rayon::prelude::*;

use crate::data::Dataset;
use crate::error::{Error, Result};
use crate::neighbors::{NeighborIndex, NeighborList};
use crate::sum::stable_sum;

/// A fitted k-NN regression model borrowing its training data.
///
/// The model is immutable; predictions may run concurrently.
pub struct KnnModel<'a> {
    index: NeighborIndex,
    dataset: &'a Dataset,
    k: usize,
}

impl<'a> KnnModel<'a> {
    /// Builds the neighbour index over the training inputs.
    ///
    /// Requires 1 ≤ k ≤ n; k = n averages the whole training set.
    pub fn fit(dataset: &'a Dataset, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidK);
        }
        if k > dataset.len() {
            return Err(Error::KTooLarge {
                k,
                max: dataset.len(),
            });
        }
        let index = NeighborIndex::build(dataset.inputs())?;
        Ok(Self { index, dataset, k })
    }

    /// Neighbour count k.
    pub fn k(&self) -> usize {
        self.k
    }

    /// The underlying neighbour index.
    pub fn index(&self) -> &NeighborIndex {
        &self.index
    }

    /// Training data the model was fitted on.
    pub fn dataset(&self) -> &Dataset {
        self.dataset
    }

    /// Mean of the k training outputs nearest to `query`.
    pub fn predict(&self, query: &[f64]) -> Result<Vec<f64>> {
        let neighbors = self.index.knn(query, self.k)?;
        Ok(self.average_outputs(&neighbors))
    }

    /// Leave-one-out prediction at training row `held_out`: the k-NN
    /// prediction from the model fitted on the data with that row
    /// removed. Requires k ≤ n − 1.
    pub fn predict_loo(&self, held_out: usize) -> Result<Vec<f64>> {
        let neighbors = self
            .index
            .knn_excluding(self.dataset.input(held_out), self.k, held_out)?;
        Ok(self.average_outputs(&neighbors))
    }

    /// Mean squared prediction error over the model's own training rows:
    /// (1/n) Σ ‖predict(x_i) − y_i‖².
    ///
    /// Row errors are computed in parallel and reduced with an
    /// order-independent sum, so the value does not depend on thread
    /// count or row order.
    pub fn training_mse(&self) -> f64 {
        let errors: Vec<f64> = (0..self.dataset.len())
            .into_par_iter()
            .map(|row| {
                let prediction = self
                    .predict(self.dataset.input(row))
                    .expect("training rows match the fitted dimension");
                squared_error(&prediction, self.dataset.output(row))
            })
            .collect();
        stable_sum(&errors) / self.dataset.len() as f64
    }

    /// Outputs averaged in neighbour order (distance, then row index).
    fn average_outputs(&self, neighbors: &NeighborList) -> Vec<f64> {
        let m = self.dataset.output_dim();
        let mut acc = vec![0.0; m];
        for &row in neighbors.indices() {
            for (a, y) in acc.iter_mut().zip(self.dataset.output(row)) {
                *a += y;
            }
        }
        let count = neighbors.len() as f64;
        acc.iter_mut().for_each(|a| *a /= count);
        acc
    }
}

/// Leave-one-out k-NN prediction at row `held_out` as a standalone call;
/// fits one model on the full data and uses query-time exclusion.
pub fn predict_loo(dataset: &Dataset, k: usize, held_out: usize) -> Result<Vec<f64>> {
    if k > dataset.len().saturating_sub(1) {
        return Err(Error::KTooLarge {
            k,
            max: dataset.len() - 1,
        });
    }
    KnnModel::fit(dataset, k)?.predict_loo(held_out)
}

/// Squared Euclidean distance between prediction and truth in R^M.
pub(crate) fn squared_error(prediction: &[f64], truth: &[f64]) -> f64 {
    prediction
        .iter()
        .zip(truth)
        .map(|(p, y)| (p - y) * (p - y))
        .sum()
}
