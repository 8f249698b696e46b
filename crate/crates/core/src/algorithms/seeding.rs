//! Initial medoid selection: the exact 1-medoid, D² sampling, uniform draws.

use rand::seq::index;
use rand::Rng;

use super::check_k;
use crate::objective::nearest;
use crate::{DissimilarityMatrix, Error, MedoidSet, Result, RngStream};

/// Point with the smallest total distance to all points (lowest index on ties).
///
/// This is the exact optimum of the 1-medoid problem.
pub fn one_medoid(m: &DissimilarityMatrix) -> usize {
    let all: Vec<usize> = (0..m.len()).collect();
    one_medoid_among(m, &all)
}

/// Like [`one_medoid`], restricted to `candidates` but still summing over all points.
pub(crate) fn one_medoid_among(m: &DissimilarityMatrix, candidates: &[usize]) -> usize {
    let mut best = candidates[0];
    let mut best_sum = f64::INFINITY;
    for &i in candidates {
        let s: f64 = m.row(i).iter().sum();
        if s < best_sum {
            best = i;
            best_sum = s;
        }
    }
    best
}

/// Draws a point with probability `d(x)² / Σ d(x')²`, where `d(x)` is the
/// distance from `x` to its nearest medoid in `current`.
///
/// Current medoids have weight zero and are never returned. Fails with
/// [`Error::DegenerateDistribution`] when every point coincides with a medoid.
pub fn dsquared_sample(
    m: &DissimilarityMatrix,
    current: &MedoidSet,
    rng: &mut RngStream,
) -> Result<usize> {
    let weights = dsquared_weights(m, current.indices());
    draw_weighted(&weights, rng).ok_or(Error::DegenerateDistribution)
}

/// D² draw that falls back to a uniform draw over non-medoids when all weights vanish.
pub(crate) fn dsquared_or_uniform(
    m: &DissimilarityMatrix,
    current: &[usize],
    rng: &mut RngStream,
) -> usize {
    let weights = dsquared_weights(m, current);
    draw_weighted(&weights, rng).unwrap_or_else(|| uniform_non_medoid(m.len(), current, rng))
}

pub(crate) fn dsquared_weights(m: &DissimilarityMatrix, current: &[usize]) -> Vec<f64> {
    let mut w: Vec<f64> = (0..m.len())
        .map(|i| {
            let d = nearest(m, i, current).1;
            d * d
        })
        .collect();
    for &c in current {
        w[c] = 0.0;
    }
    w
}

/// Index drawn proportionally to `weights`, or `None` if they sum to zero.
/// Zero-weight entries are never returned.
pub(crate) fn draw_weighted(weights: &[f64], rng: &mut RngStream) -> Option<usize> {
    let total: f64 = weights.iter().sum();
    if total <= 0.0 {
        return None;
    }
    let target = rng.random::<f64>() * total;
    let mut acc = 0.0;
    let mut last = None;
    for (i, &w) in weights.iter().enumerate() {
        if w <= 0.0 {
            continue;
        }
        acc += w;
        last = Some(i);
        if acc > target {
            return last;
        }
    }
    // Rounding left `acc` a hair short of `target`.
    last
}

fn uniform_non_medoid(n: usize, current: &[usize], rng: &mut RngStream) -> usize {
    let pool: Vec<usize> = (0..n).filter(|i| !current.contains(i)).collect();
    pool[rng.random_range(0..pool.len())]
}

/// k-means++ seeding: a uniform first medoid, then `k - 1` D² draws.
pub fn kpp_seed(m: &DissimilarityMatrix, k: usize, rng: &mut RngStream) -> Result<MedoidSet> {
    let n = m.len();
    check_k(k, n)?;
    let first = rng.random_range(0..n);
    let mut chosen = vec![first];
    // Running nearest-medoid distance, updated as medoids are added.
    let mut dist: Vec<f64> = m.row(first).to_vec();
    while chosen.len() < k {
        let mut weights: Vec<f64> = dist.iter().map(|d| d * d).collect();
        for &c in &chosen {
            weights[c] = 0.0;
        }
        let next = draw_weighted(&weights, rng)
            .unwrap_or_else(|| uniform_non_medoid(n, &chosen, rng));
        chosen.push(next);
        for (d, &e) in dist.iter_mut().zip(m.row(next)) {
            if e < *d {
                *d = e;
            }
        }
    }
    Ok(MedoidSet::from_trusted(chosen))
}

/// `k` distinct medoids drawn uniformly without replacement.
pub fn uniform_seed(n: usize, k: usize, rng: &mut RngStream) -> Result<MedoidSet> {
    check_k(k, n)?;
    Ok(MedoidSet::from_trusted(index::sample(rng, n, k).into_vec()))
}
