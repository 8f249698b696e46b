//! Dense pairwise dissimilarity tables.

use rayon::prelude::*;

use crate::{Dataset, Error, Result};

/// Largest point count for which a dense `n × n` table is built.
pub const MAX_POINTS: usize = 15_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MetricKind {
    Euclidean,
    Manhattan,
}

impl MetricKind {
    pub fn distance(self, a: &[f64], b: &[f64]) -> f64 {
        match self {
            MetricKind::Euclidean => a
                .iter()
                .zip(b)
                .map(|(x, y)| (x - y) * (x - y))
                .sum::<f64>()
                .sqrt(),
            MetricKind::Manhattan => a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            MetricKind::Euclidean => "euclidean",
            MetricKind::Manhattan => "manhattan",
        }
    }
}

impl std::str::FromStr for MetricKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "euclidean" => Ok(MetricKind::Euclidean),
            "manhattan" => Ok(MetricKind::Manhattan),
            other => Err(Error::Config(format!("unknown metric `{other}`"))),
        }
    }
}

/// Symmetric, zero-diagonal, nonnegative `n × n` table stored row-major.
///
/// Immutable once built, so a single matrix can be shared by any number of
/// concurrent algorithm runs.
#[derive(Debug, Clone, PartialEq)]
pub struct DissimilarityMatrix {
    n: usize,
    d: Vec<f64>,
    metric: Option<MetricKind>,
}

impl DissimilarityMatrix {
    /// Wraps a row-major table after checking every matrix invariant exactly.
    pub fn from_row_major(n: usize, d: Vec<f64>) -> Result<Self> {
        check_capacity(n)?;
        if n == 0 {
            return Err(Error::InvalidData("empty dissimilarity matrix".into()));
        }
        if d.len() != n * n {
            return Err(Error::InvalidData(format!(
                "{} entries for a {n}x{n} matrix",
                d.len()
            )));
        }
        for i in 0..n {
            if d[i * n + i] != 0.0 {
                return Err(Error::InvalidData(format!("d[{i}][{i}] is not zero")));
            }
            for j in i + 1..n {
                let v = d[i * n + j];
                if !v.is_finite() || v < 0.0 {
                    return Err(Error::InvalidData(format!(
                        "d[{i}][{j}] = {v} is not a finite nonnegative value"
                    )));
                }
                if v != d[j * n + i] {
                    return Err(Error::InvalidData(format!("d[{i}][{j}] != d[{j}][{i}]")));
                }
            }
        }
        Ok(Self { n, d, metric: None })
    }

    /// Builds the table from nested rows; see [`from_row_major`](Self::from_row_major).
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidData("dissimilarity rows are not square".into()));
        }
        Self::from_row_major(n, rows.concat())
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.d[i * self.n + j]
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        &self.d[i * self.n..(i + 1) * self.n]
    }

    /// The metric the table was computed with, if it came from [`build_dissimilarity`].
    pub fn metric(&self) -> Option<MetricKind> {
        self.metric
    }

    /// Copies the rows and columns selected by `indices` into a new matrix.
    ///
    /// Entry `(a, b)` of the result is exactly `self.get(indices[a], indices[b])`.
    ///
    /// # Panics
    ///
    /// Panics if `indices` is empty or contains an out-of-range index.
    pub fn submatrix(&self, indices: &[usize]) -> Self {
        assert!(!indices.is_empty(), "submatrix of an empty index list");
        let k = indices.len();
        let mut d = Vec::with_capacity(k * k);
        for &i in indices {
            let row = self.row(i);
            d.extend(indices.iter().map(|&j| row[j]));
        }
        Self {
            n: k,
            d,
            metric: self.metric,
        }
    }
}

fn check_capacity(n: usize) -> Result<()> {
    if n > MAX_POINTS {
        return Err(Error::Capacity(format!(
            "{n} points exceed the dense matrix limit of {MAX_POINTS}"
        )));
    }
    Ok(())
}

/// Computes all pairwise distances of `ds` under `metric`.
///
/// Rows are filled in parallel; the lower triangle mirrors the upper one so
/// the result is symmetric bit-for-bit.
pub fn build_dissimilarity(ds: &Dataset, metric: MetricKind) -> Result<DissimilarityMatrix> {
    let n = ds.n();
    check_capacity(n)?;
    if let Some(i) = ds
        .points()
        .iter()
        .position(|x| x.iter().any(|v| !v.is_finite()))
    {
        return Err(Error::InvalidData(format!("point {i} has a non-finite attribute")));
    }
    let mut d = vec![0.0; n * n];
    d.par_chunks_mut(n).enumerate().for_each(|(i, row)| {
        let xi = ds.point(i);
        for (j, slot) in row.iter_mut().enumerate().skip(i + 1) {
            *slot = metric.distance(xi, ds.point(j));
        }
    });
    for i in 0..n {
        for j in i + 1..n {
            d[j * n + i] = d[i * n + j];
        }
    }
    Ok(DissimilarityMatrix {
        n,
        d,
        metric: Some(metric),
    })
}
