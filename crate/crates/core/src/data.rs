//! In-memory point sets.

use crate::{Error, Result};

/// `n` points with `p` real attributes each, optionally labelled by class.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    points: Vec<Vec<f64>>,
    labels: Option<Vec<i64>>,
}

impl Dataset {
    /// Validates and wraps a point list.
    ///
    /// Fails if there are no points, no attributes, rows of unequal length,
    /// non-finite values, or a label list whose length differs from the
    /// number of points.
    pub fn new(points: Vec<Vec<f64>>, labels: Option<Vec<i64>>) -> Result<Self> {
        let Some(first) = points.first() else {
            return Err(Error::InvalidData("dataset has no points".into()));
        };
        let p = first.len();
        if p == 0 {
            return Err(Error::InvalidData("points have no attributes".into()));
        }
        for (i, x) in points.iter().enumerate() {
            if x.len() != p {
                return Err(Error::InvalidData(format!(
                    "point {i} has {} attributes, expected {p}",
                    x.len()
                )));
            }
            if let Some(j) = x.iter().position(|v| !v.is_finite()) {
                return Err(Error::InvalidData(format!(
                    "point {i} attribute {j} is not finite"
                )));
            }
        }
        if let Some(l) = &labels {
            if l.len() != points.len() {
                return Err(Error::InvalidData(format!(
                    "{} labels for {} points",
                    l.len(),
                    points.len()
                )));
            }
        }
        Ok(Self { points, labels })
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn p(&self) -> usize {
        self.points[0].len()
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.points[i]
    }

    pub fn labels(&self) -> Option<&[i64]> {
        self.labels.as_deref()
    }

    /// Number of distinct labels, or 0 for an unlabelled dataset.
    pub fn class_count(&self) -> usize {
        let Some(labels) = &self.labels else {
            return 0;
        };
        let mut l = labels.clone();
        l.sort_unstable();
        l.dedup();
        l.len()
    }

    /// Attribute-wise mean of all points.
    pub fn mean(&self) -> Vec<f64> {
        let mut mean = vec![0.0; self.p()];
        for x in &self.points {
            for (acc, v) in mean.iter_mut().zip(x) {
                *acc += v;
            }
        }
        let n = self.n() as f64;
        mean.iter_mut().for_each(|v| *v /= n);
        mean
    }

    pub fn into_parts(self) -> (Vec<Vec<f64>>, Option<Vec<i64>>) {
        (self.points, self.labels)
    }
}
