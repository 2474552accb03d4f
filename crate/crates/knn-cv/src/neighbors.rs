//! Exact nearest-neighbour search over a fixed set of training points.
//!
//! [`NeighborIndex`] is a static kd-tree: median split on the
//! widest-spread coordinate, exhaustive scan inside leaves. Queries are
//! exact, and ties are resolved by a total order on candidates —
//! squared distance first, then ascending row index — so every query has
//! exactly one correct answer regardless of how the tree was built.
//! Distance ties mean *bitwise-equal* squared distances; no epsilon is
//! applied anywhere.
//!
//! The index is immutable after construction and safe to query from
//! multiple threads.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

/// Points per leaf before a node is split.
const LEAF_SIZE: usize = 16;

/// Squared Euclidean distance, accumulated left to right.
///
/// Every distance in this crate goes through this function so that
/// bitwise tie semantics are consistent between the tree search and any
/// exhaustive scan.
pub fn squared_distance(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// Candidate neighbour under the house total order: (squared distance,
/// row index), both ascending.
#[derive(Clone, Copy, Debug, PartialEq)]
struct Candidate {
    d2: f64,
    row: u32,
}

impl Eq for Candidate {}

impl Ord for Candidate {
    fn cmp(&self, other: &Self) -> Ordering {
        // d2 is a sum of squares, never NaN and never -0.0, so total_cmp
        // agrees with the numeric order.
        self.d2.total_cmp(&other.d2).then(self.row.cmp(&other.row))
    }
}

impl PartialOrd for Candidate {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

enum Node {
    Leaf {
        start: u32,
        len: u32,
    },
    Split {
        dim: u32,
        value: f64,
        left: u32,
        right: u32,
    },
}

/// The k nearest training rows for one query, sorted by the
/// (distance, row index) total order.
#[derive(Clone, Debug, PartialEq)]
pub struct NeighborList {
    indices: Vec<usize>,
    distances: Vec<f64>,
}

impl NeighborList {
    /// Training-row indices, nearest first.
    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    /// Euclidean distances matching [`indices`](Self::indices), nondecreasing.
    pub fn distances(&self) -> &[f64] {
        &self.distances
    }

    /// Number of neighbours returned.
    pub fn len(&self) -> usize {
        self.indices.len()
    }

    /// True when the list holds no neighbours.
    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }
}

/// Immutable exact k-NN index over a set of training points.
pub struct NeighborIndex {
    /// Row-major coordinates in original row order.
    coords: Vec<f64>,
    dim: usize,
    n: usize,
    /// Permutation of 0..n; each leaf owns a contiguous range.
    rows: Vec<u32>,
    nodes: Vec<Node>,
    root: u32,
}

impl NeighborIndex {
    /// Builds an index over `points`.
    ///
    /// All rows must share one dimension D ≥ 1 and contain only finite
    /// values. Construction is O(n log n) expected and single-threaded.
    pub fn build(points: &[Vec<f64>]) -> Result<Self> {
        let n = points.len();
        if n == 0 {
            return Err(Error::EmptyDataset);
        }
        let dim = points[0].len();
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        let mut coords = Vec::with_capacity(n * dim);
        for (row, point) in points.iter().enumerate() {
            if point.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: point.len(),
                });
            }
            if point.iter().any(|v| !v.is_finite()) {
                return Err(Error::NonFiniteInput { row });
            }
            coords.extend_from_slice(point);
        }
        Self::from_flat(coords, dim)
    }

    /// Builds from row-major coordinates already known to be finite and
    /// rectangular; avoids per-row allocations on hot rebuild paths.
    pub(crate) fn from_flat(coords: Vec<f64>, dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        if coords.is_empty() {
            return Err(Error::EmptyDataset);
        }
        debug_assert_eq!(coords.len() % dim, 0);
        debug_assert!(coords.iter().all(|v| v.is_finite()));
        let n = coords.len() / dim;
        let mut rows: Vec<u32> = (0..n as u32).collect();
        let mut nodes = Vec::new();
        let root = build_node(&coords, dim, &mut rows, 0, &mut nodes);
        Ok(Self {
            coords,
            dim,
            n,
            rows,
            nodes,
            root,
        })
    }

    /// Number of indexed points.
    pub fn len(&self) -> usize {
        self.n
    }

    /// True when the index holds no points (never, by construction).
    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Input dimension D.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Coordinates of training row `row`.
    pub fn point(&self, row: usize) -> &[f64] {
        &self.coords[row * self.dim..(row + 1) * self.dim]
    }

    /// The k nearest training rows to `query`, exact under the
    /// (distance, row index) order.
    pub fn knn(&self, query: &[f64], k: usize) -> Result<NeighborList> {
        self.validate_query(query)?;
        if k == 0 {
            return Err(Error::InvalidK);
        }
        if k > self.n {
            return Err(Error::KTooLarge { k, max: self.n });
        }
        let mut heap = BinaryHeap::with_capacity(k + 1);
        self.search(self.root, query, k, &mut heap);
        Ok(finish(heap))
    }

    /// The k nearest training rows to `query` with `excluded_row` removed
    /// from consideration; original row indices are preserved.
    ///
    /// Implemented as a (k+1)-NN query that drops the excluded row if it
    /// appears and truncates to k otherwise, which is exact under the
    /// total order.
    pub fn knn_excluding(
        &self,
        query: &[f64],
        k: usize,
        excluded_row: usize,
    ) -> Result<NeighborList> {
        if excluded_row >= self.n {
            return Err(Error::RowOutOfBounds {
                row: excluded_row,
                len: self.n,
            });
        }
        if k == 0 {
            return Err(Error::InvalidK);
        }
        if k > self.n - 1 {
            return Err(Error::KTooLarge { k, max: self.n - 1 });
        }
        let mut list = self.knn(query, k + 1)?;
        match list.indices.iter().position(|&i| i == excluded_row) {
            Some(pos) => {
                list.indices.remove(pos);
                list.distances.remove(pos);
            }
            None => {
                list.indices.truncate(k);
                list.distances.truncate(k);
            }
        }
        Ok(list)
    }

    fn validate_query(&self, query: &[f64]) -> Result<()> {
        if query.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: query.len(),
            });
        }
        if query.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFiniteQuery);
        }
        Ok(())
    }

    fn search(&self, node: u32, query: &[f64], k: usize, heap: &mut BinaryHeap<Candidate>) {
        match self.nodes[node as usize] {
            Node::Leaf { start, len } => {
                for &row in &self.rows[start as usize..(start + len) as usize] {
                    let d2 = squared_distance(query, self.point(row as usize));
                    let cand = Candidate { d2, row };
                    if heap.len() < k {
                        heap.push(cand);
                    } else if cand < *heap.peek().expect("heap non-empty") {
                        heap.pop();
                        heap.push(cand);
                    }
                }
            }
            Node::Split {
                dim,
                value,
                left,
                right,
            } => {
                let diff = query[dim as usize] - value;
                let (near, far) = if diff < 0.0 {
                    (left, right)
                } else {
                    (right, left)
                };
                self.search(near, query, k, heap);
                // The far side can only be skipped when every point there is
                // strictly worse than the current k-th candidate; on an exact
                // distance tie a smaller row index could still win.
                let prune =
                    heap.len() == k && diff * diff > heap.peek().expect("heap non-empty").d2;
                if !prune {
                    self.search(far, query, k, heap);
                }
            }
        }
    }
}

fn build_node(
    coords: &[f64],
    dim: usize,
    rows: &mut [u32],
    offset: usize,
    nodes: &mut Vec<Node>,
) -> u32 {
    let coord = |row: u32, d: usize| coords[row as usize * dim + d];

    let make_leaf = |len: usize, nodes: &mut Vec<Node>| {
        nodes.push(Node::Leaf {
            start: offset as u32,
            len: len as u32,
        });
        (nodes.len() - 1) as u32
    };

    if rows.len() <= LEAF_SIZE {
        return make_leaf(rows.len(), nodes);
    }

    // Split on the coordinate with the widest spread in this node.
    let mut split_dim = 0;
    let mut best_spread = f64::NEG_INFINITY;
    for d in 0..dim {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for &row in rows.iter() {
            let v = coord(row, d);
            lo = lo.min(v);
            hi = hi.max(v);
        }
        if hi - lo > best_spread {
            best_spread = hi - lo;
            split_dim = d;
        }
    }
    // All points in this node are identical; splitting cannot make progress.
    if best_spread == 0.0 {
        return make_leaf(rows.len(), nodes);
    }

    let mid = rows.len() / 2;
    rows.select_nth_unstable_by(mid, |&a, &b| {
        coord(a, split_dim).total_cmp(&coord(b, split_dim))
    });
    let value = coord(rows[mid], split_dim);

    let left = build_node(coords, dim, &mut rows[..mid], offset, nodes);
    let right = build_node(coords, dim, &mut rows[mid..], offset + mid, nodes);
    nodes.push(Node::Split {
        dim: split_dim as u32,
        value,
        left,
        right,
    });
    (nodes.len() - 1) as u32
}

fn finish(heap: BinaryHeap<Candidate>) -> NeighborList {
    let mut candidates = heap.into_vec();
    candidates.sort_unstable();
    NeighborList {
        indices: candidates.iter().map(|c| c.row as usize).collect(),
        distances: candidates.iter().map(|c| c.d2.sqrt()).collect(),
    }
}
