//! Dataset container, CSV ingestion, feature standardization, and the
//! tie/duplicate diagnostics that decide whether the fast LOOCV path is
//! exact on a given dataset.

use std::collections::HashMap;
use std::path::Path;

use crate::error::{Error, Result};
use crate::sum::stable_mean;

/// n input points in R^D paired with outputs in R^M.
///
/// Row identity is positional: row `i` of the inputs corresponds to row
/// `i` of the outputs, and every neighbour index reported by the crate
/// refers to this ordering.
#[derive(Clone, Debug, PartialEq)]
pub struct Dataset {
    inputs: Vec<Vec<f64>>,
    outputs: Vec<Vec<f64>>,
}

impl Dataset {
    /// Validates and wraps parallel input/output rows.
    pub fn new(inputs: Vec<Vec<f64>>, outputs: Vec<Vec<f64>>) -> Result<Self> {
        if inputs.len() != outputs.len() {
            return Err(Error::LengthMismatch {
                inputs: inputs.len(),
                outputs: outputs.len(),
            });
        }
        if inputs.is_empty() {
            return Err(Error::EmptyDataset);
        }
        let dim = inputs[0].len();
        let out_dim = outputs[0].len();
        if dim == 0 || out_dim == 0 {
            return Err(Error::ZeroDimension);
        }
        for (row, x) in inputs.iter().enumerate() {
            if x.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: x.len(),
                });
            }
            if x.iter().any(|v| !v.is_finite()) {
                return Err(Error::NonFiniteInput { row });
            }
        }
        for (row, y) in outputs.iter().enumerate() {
            if y.len() != out_dim {
                return Err(Error::DimensionMismatch {
                    expected: out_dim,
                    found: y.len(),
                });
            }
            if y.iter().any(|v| !v.is_finite()) {
                return Err(Error::NonFiniteInput { row });
            }
        }
        Ok(Self { inputs, outputs })
    }

    /// Number of rows n.
    pub fn len(&self) -> usize {
        self.inputs.len()
    }

    /// True when the dataset has no rows (impossible by construction).
    pub fn is_empty(&self) -> bool {
        self.inputs.is_empty()
    }

    /// Input dimension D.
    pub fn input_dim(&self) -> usize {
        self.inputs[0].len()
    }

    /// Output dimension M.
    pub fn output_dim(&self) -> usize {
        self.outputs[0].len()
    }

    /// All input rows.
    pub fn inputs(&self) -> &[Vec<f64>] {
        &self.inputs
    }

    /// All output rows.
    pub fn outputs(&self) -> &[Vec<f64>] {
        &self.outputs
    }

    /// Input row `i`.
    pub fn input(&self, i: usize) -> &[f64] {
        &self.inputs[i]
    }

    /// Output row `i`.
    pub fn output(&self, i: usize) -> &[f64] {
        &self.outputs[i]
    }
}

/// CSV parsing options. The file must be UTF-8 with a header row; rows
/// with missing cells are rejected.
#[derive(Clone, Copy, Debug)]
pub struct CsvOptions {
    /// Field delimiter, `,` by default.
    pub delimiter: u8,
}

impl Default for CsvOptions {
    fn default() -> Self {
        Self { delimiter: b',' }
    }
}

/// Loads a delimited text file into a [`Dataset`].
///
/// `targets` names the output columns; `features` names the input
/// columns, or selects every non-target column in header order when
/// `None`. Row numbers in errors are 1-based over data rows (the header
/// is row 0).
pub fn load_csv(
    path: &Path,
    targets: &[&str],
    features: Option<&[&str]>,
    options: &CsvOptions,
) -> Result<Dataset> {
    let mut reader = csv::ReaderBuilder::new()
        .delimiter(options.delimiter)
        .flexible(true)
        .from_path(path)
        .map_err(|e| csv_open_error(path, e))?;

    let headers: Vec<String> = reader
        .headers()
        .map_err(|e| csv_read_error(0, e))?
        .iter()
        .map(str::to_owned)
        .collect();

    let column_index = |name: &str| -> Result<usize> {
        headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| Error::MissingColumn {
                name: name.to_owned(),
            })
    };

    let target_cols: Vec<usize> = targets
        .iter()
        .map(|name| column_index(name))
        .collect::<Result<_>>()?;
    let feature_cols: Vec<usize> = match features {
        Some(names) => names
            .iter()
            .map(|name| column_index(name))
            .collect::<Result<_>>()?,
        None => (0..headers.len())
            .filter(|i| !target_cols.contains(i))
            .collect(),
    };

    let mut inputs = Vec::new();
    let mut outputs = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let row = i + 1;
        let record = record.map_err(|e| csv_read_error(row, e))?;
        if record.len() != headers.len() {
            return Err(Error::Parse {
                row,
                message: format!("expected {} fields, found {}", headers.len(), record.len()),
            });
        }
        let parse_cell = |col: usize| -> Result<f64> {
            let cell = record.get(col).unwrap_or("").trim();
            cell.parse::<f64>().map_err(|_| Error::NonNumericCell {
                row,
                column: headers[col].clone(),
            })
        };
        inputs.push(
            feature_cols
                .iter()
                .map(|&c| parse_cell(c))
                .collect::<Result<_>>()?,
        );
        outputs.push(
            target_cols
                .iter()
                .map(|&c| parse_cell(c))
                .collect::<Result<_>>()?,
        );
    }

    Dataset::new(inputs, outputs)
}

fn csv_open_error(path: &Path, e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(source) => Error::Io {
            path: path.to_owned(),
            source,
        },
        other => Error::Parse {
            row: 0,
            message: format!("{other:?}"),
        },
    }
}

fn csv_read_error(row: usize, e: csv::Error) -> Error {
    Error::Parse {
        row,
        message: e.to_string(),
    }
}

/// Per-feature location and scale removed by [`standardize`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FeatureScale {
    pub mean: f64,
    pub std: f64,
}

/// Rescales each input feature to mean zero and unit variance;
/// outputs are untouched.
///
/// Uses the population standard deviation (divisor n). The column
/// moments are computed with an order-independent reduction, so the
/// standardized coordinates are bit-identical for any row permutation
/// of the same data. Constant columns are rejected.
pub fn standardize(dataset: &Dataset) -> Result<(Dataset, Vec<FeatureScale>)> {
    let n = dataset.len();
    if n < 2 {
        return Err(Error::DatasetTooSmall { n, min: 2 });
    }
    let dim = dataset.input_dim();

    let mut scales = Vec::with_capacity(dim);
    for d in 0..dim {
        let column: Vec<f64> = dataset.inputs.iter().map(|row| row[d]).collect();
        let mean = stable_mean(&column);
        let deviations: Vec<f64> = column.iter().map(|v| (v - mean) * (v - mean)).collect();
        let std = stable_mean(&deviations).sqrt();
        if std == 0.0 {
            return Err(Error::ConstantFeature { column: d });
        }
        scales.push(FeatureScale { mean, std });
    }

    let inputs = dataset
        .inputs
        .iter()
        .map(|row| {
            row.iter()
                .zip(&scales)
                .map(|(v, s)| (v - s.mean) / s.std)
                .collect()
        })
        .collect();
    let standardized = Dataset::new(inputs, dataset.outputs.clone())?;
    Ok((standardized, scales))
}

/// Caps on the exhaustive tie scans of [`detect_ties_with`].
#[derive(Clone, Copy, Debug)]
pub struct TieScanLimits {
    /// Above this row count only duplicates are checked.
    pub exhaustive_cap: usize,
    /// The O(n³)-flavoured equidistance scan runs only up to this n.
    pub triple_cap: usize,
    /// Triples recorded in the report before only counting.
    pub max_recorded_triples: usize,
}

impl Default for TieScanLimits {
    fn default() -> Self {
        Self {
            exhaustive_cap: 5000,
            triple_cap: 2000,
            max_recorded_triples: 1_000_000,
        }
    }
}

/// Catalogue of exact-tie structure in the inputs: duplicate points and
/// equidistant-neighbour triples.
///
/// `assumption_holds` is true exactly when both catalogues are empty —
/// the condition under which every nearest-neighbour set is unique and
/// the fast LOOCV identity is exact.
#[derive(Clone, Debug, PartialEq)]
pub struct TieReport {
    /// Groups of row indices with bitwise-identical inputs; each group
    /// has size ≥ 2, members ascending, groups ordered by first member.
    pub duplicate_groups: Vec<Vec<usize>>,
    /// Triples (l, i, j) with i < j, both distinct from l, and
    /// d(x_l, x_i) exactly equal to d(x_l, x_j). Truncated to
    /// `max_recorded_triples`; `tie_triple_total` is the full count.
    pub tie_triples: Vec<(usize, usize, usize)>,
    /// Total number of tie triples found (may exceed `tie_triples.len()`).
    pub tie_triple_total: usize,
    /// False when the triple scan was skipped because n exceeded the cap.
    pub tie_triples_evaluated: bool,
    /// No duplicates and no recorded equidistance violations.
    pub assumption_holds: bool,
}

impl TieReport {
    /// Number of rows that belong to some duplicate group.
    pub fn duplicate_row_count(&self) -> usize {
        self.duplicate_groups.iter().map(Vec::len).sum()
    }
}

/// Exhaustively checks the tie-breaking condition with default caps.
pub fn detect_ties(dataset: &Dataset) -> TieReport {
    detect_ties_with(dataset, &TieScanLimits::default())
}

/// Exhaustively checks the tie-breaking condition.
///
/// Duplicates are detected exactly at any n. The equidistance clause is
/// scanned only while `n <= triple_cap.min(exhaustive_cap)`; beyond
/// that the report marks the triple scan as not evaluated.
pub fn detect_ties_with(dataset: &Dataset, limits: &TieScanLimits) -> TieReport {
    let n = dataset.len();
    let duplicate_groups = duplicate_groups(dataset.inputs());

    let scan_triples = n <= limits.triple_cap.min(limits.exhaustive_cap);
    let mut tie_triples = Vec::new();
    let mut tie_triple_total = 0usize;
    if scan_triples {
        let mut pairs: Vec<(f64, usize)> = Vec::with_capacity(n.saturating_sub(1));
        for l in 0..n {
            pairs.clear();
            for i in 0..n {
                if i != l {
                    pairs.push((
                        crate::neighbors::squared_distance(dataset.input(l), dataset.input(i)),
                        i,
                    ));
                }
            }
            pairs.sort_unstable_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
            let mut run = 0;
            while run < pairs.len() {
                let mut end = run + 1;
                while end < pairs.len() && pairs[end].0.to_bits() == pairs[run].0.to_bits() {
                    end += 1;
                }
                for a in run..end {
                    for b in a + 1..end {
                        tie_triple_total += 1;
                        if tie_triples.len() < limits.max_recorded_triples {
                            tie_triples.push((l, pairs[a].1, pairs[b].1));
                        }
                    }
                }
                run = end;
            }
        }
    }

    let assumption_holds = duplicate_groups.is_empty() && tie_triple_total == 0;
    TieReport {
        duplicate_groups,
        tie_triples,
        tie_triple_total,
        tie_triples_evaluated: scan_triples,
        assumption_holds,
    }
}

/// Collapses every duplicate-input group to a single row whose output is
/// the componentwise mean of the group's outputs.
///
/// Surviving rows keep first-occurrence order; inputs are compared
/// bitwise, so the result has no duplicate inputs at all.
pub fn resolve_duplicates(dataset: &Dataset) -> Dataset {
    let groups = group_map(dataset.inputs());
    let mut inputs = Vec::with_capacity(groups.len());
    let mut outputs = Vec::with_capacity(groups.len());
    let out_dim = dataset.output_dim();
    for members in &groups {
        inputs.push(dataset.input(members[0]).to_vec());
        let mut averaged = Vec::with_capacity(out_dim);
        for m in 0..out_dim {
            let component: Vec<f64> = members.iter().map(|&i| dataset.output(i)[m]).collect();
            averaged.push(stable_mean(&component));
        }
        outputs.push(averaged);
    }
    Dataset::new(inputs, outputs).expect("collapsing rows preserves dataset validity")
}

/// Row indices grouped by bitwise-identical inputs, in first-occurrence
/// order; singleton groups included.
fn group_map(inputs: &[Vec<f64>]) -> Vec<Vec<usize>> {
    let mut by_bits: HashMap<Vec<u64>, usize> = HashMap::new();
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for (row, point) in inputs.iter().enumerate() {
        let key: Vec<u64> = point.iter().map(|v| v.to_bits()).collect();
        match by_bits.get(&key) {
            Some(&g) => groups[g].push(row),
            None => {
                by_bits.insert(key, groups.len());
                groups.push(vec![row]);
            }
        }
    }
    groups
}

fn duplicate_groups(inputs: &[Vec<f64>]) -> Vec<Vec<usize>> {
    group_map(inputs)
        .into_iter()
        .filter(|g| g.len() >= 2)
        .collect()
}
