//! Order-independent floating-point reductions.
//!
//! Scores must come out bit-identical no matter how rows are permuted or how
//! many threads computed the addends, so every statistical reduction in this
//! crate funnels through [`stable_sum`]: sort the addends into a canonical
//! order, then add pairwise. Pairwise summation also keeps the rounding error
//! at O(log n) ulps instead of O(n).

/// Pairwise (tree) summation of a slice, left to right.
pub(crate) fn pairwise_sum(values: &[f64]) -> f64 {
    if values.len() <= 32 {
        return values.iter().sum();
    }
    let mid = values.len() / 2;
    pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
}

/// Sum that is invariant under permutation of `values`.
///
/// Sorts a copy into total order before the pairwise reduction, so the result
/// depends only on the multiset of addends.
pub(crate) fn stable_sum(values: &[f64]) -> f64 {
    let mut sorted = values.to_vec();
    sorted.sort_unstable_by(f64::total_cmp);
    pairwise_sum(&sorted)
}

/// Permutation-invariant arithmetic mean.
pub(crate) fn stable_mean(values: &[f64]) -> f64 {
    stable_sum(values) / values.len() as f64
}
