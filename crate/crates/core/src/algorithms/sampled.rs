//! Two-phase variants: cluster a uniform p% sample, then refine on all points.

use rand::seq::index;

use super::check_k;
use super::fkm::fkm;
use super::inckpp::{fkm_random, inckpp, kpp};
use crate::objective::se_of_slice;
use crate::{ClusteringResult, DissimilarityMatrix, Error, MedoidSet, Result, RngStream};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleParams {
    /// Share of the points used by the pre-search, in percent, within `(0, 100]`.
    pub percent: f64,
}

impl SampleParams {
    pub fn new(percent: f64) -> Result<Self> {
        if !(percent > 0.0 && percent <= 100.0) {
            return Err(Error::Contract(format!(
                "sample percentage must lie in (0, 100], got {percent}"
            )));
        }
        Ok(Self { percent })
    }
}

/// `max(k, round(n · percent / 100))`, never more than `n`.
pub fn sample_size(n: usize, k: usize, params: &SampleParams) -> usize {
    let target = (n as f64 * params.percent / 100.0).round() as usize;
    target.max(k).min(n)
}

/// Uniform subset of `0..n` without replacement, ascending, of [`sample_size`] points.
///
/// A sample covering every point is returned without consuming randomness, so
/// a full sample leaves the stream exactly where the unsampled algorithm
/// would start.
pub fn sample_indices(n: usize, k: usize, params: &SampleParams, rng: &mut RngStream) -> Vec<usize> {
    let size = sample_size(n, k, params);
    if size == n {
        return (0..n).collect();
    }
    let mut s = index::sample(rng, n, size).into_vec();
    s.sort_unstable();
    s
}

/// Both phases of a sampled run.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledResult {
    /// Full-data indices of the sampled points, ascending.
    pub sample: Vec<usize>,
    /// Pre-search medoids mapped back to full-data indices.
    pub initial: MedoidSet,
    /// Objective of `initial` on the full matrix.
    pub initial_se: f64,
    /// Update steps spent by the pre-search.
    pub presearch_iterations: usize,
    /// Final result on the full matrix; its `iterations` covers both phases.
    pub result: ClusteringResult,
}

fn two_phase<F>(
    m: &DissimilarityMatrix,
    k: usize,
    params: &SampleParams,
    rng: &mut RngStream,
    presearch: F,
) -> Result<SampledResult>
where
    F: FnOnce(&DissimilarityMatrix, &mut RngStream) -> Result<ClusteringResult>,
{
    check_k(k, m.len())?;
    let sample = sample_indices(m.len(), k, params, rng);
    let sub = m.submatrix(&sample);
    let pre = presearch(&sub, rng)?;
    let initial =
        MedoidSet::from_trusted(pre.medoids.indices().iter().map(|&i| sample[i]).collect());
    let initial_se = se_of_slice(m, initial.indices());
    let mut result = fkm(m, &initial);
    result.iterations += pre.iterations;
    Ok(SampledResult {
        sample,
        initial,
        initial_se,
        presearch_iterations: pre.iterations,
        result,
    })
}

/// [`inckpp`] on a sample, then the local search on all points.
pub fn inckpp_sample(
    m: &DissimilarityMatrix,
    k: usize,
    params: &SampleParams,
    rng: &mut RngStream,
) -> Result<SampledResult> {
    two_phase(m, k, params, rng, |sub, r| inckpp(sub, k, r))
}

/// [`kpp`] on a sample, then the local search on all points.
pub fn kpp_sample(
    m: &DissimilarityMatrix,
    k: usize,
    params: &SampleParams,
    rng: &mut RngStream,
) -> Result<SampledResult> {
    two_phase(m, k, params, rng, |sub, r| kpp(sub, k, r))
}

/// [`fkm_random`] on a sample, then the local search on all points.
pub fn fkm_sample(
    m: &DissimilarityMatrix,
    k: usize,
    params: &SampleParams,
    rng: &mut RngStream,
) -> Result<SampledResult> {
    two_phase(m, k, params, rng, |sub, r| fkm_random(sub, k, r))
}
