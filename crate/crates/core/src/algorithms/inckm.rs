//! Incremental k-medoids with a variance-thresholded candidate set.
//!
//! Only points whose root-mean-square distance to the rest of the data stays
//! within `lambda` times the overall spread may become seeds. New seeds are
//! the candidates farthest from the medoids chosen so far. On heavily
//! imbalanced data the small clusters fall outside the candidate set, which
//! is the weakness the D²-seeded variant avoids.

use super::check_k;
use super::fkm::fkm;
use super::seeding::one_medoid_among;
use crate::objective::nearest;
use crate::{ClusteringResult, Dataset, DissimilarityMatrix, Error, MedoidSet, MetricKind, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InckmParams {
    /// Stretch factor applied to the overall spread.
    pub lambda: f64,
    /// Refine with the local search after every added medoid (the default),
    /// or seed all K medoids first and refine once.
    pub refine_each_stage: bool,
}

impl InckmParams {
    pub fn new(lambda: f64) -> Result<Self> {
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(Error::Contract(format!(
                "stretch factor must be positive, got {lambda}"
            )));
        }
        Ok(Self {
            lambda,
            refine_each_stage: true,
        })
    }

    pub fn refine_each_stage(mut self, on: bool) -> Self {
        self.refine_each_stage = on;
        self
    }
}

/// Stretch factors 1.5, 1.6, …, 2.5.
pub fn lambda_sweep() -> [f64; 11] {
    std::array::from_fn(|k| (15 + k) as f64 / 10.0)
}

/// Overall spread `sigma` and per-point spreads `sigma_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct Spread {
    /// `sqrt(Σ_i dist(x_i, mean)² / (n - 1))`
    pub sigma: f64,
    /// `sqrt(Σ_j d(x_i, x_j)² / (n - 1))` for every point
    pub sigma_i: Vec<f64>,
}

/// Computes the spreads; distances to the mean use the matrix's metric
/// (Euclidean when the matrix carries none). A single point has zero spread.
pub fn spread(ds: &Dataset, m: &DissimilarityMatrix) -> Result<Spread> {
    let n = m.len();
    if ds.n() != n {
        return Err(Error::Contract(format!(
            "dataset has {} points but the matrix has {n}",
            ds.n()
        )));
    }
    if n == 1 {
        return Ok(Spread {
            sigma: 0.0,
            sigma_i: vec![0.0],
        });
    }
    let denom = (n - 1) as f64;
    let metric = m.metric().unwrap_or(MetricKind::Euclidean);
    let mean = ds.mean();
    let sum_sq: f64 = ds
        .points()
        .iter()
        .map(|x| {
            let d = metric.distance(x, &mean);
            d * d
        })
        .sum();
    let sigma_i = (0..n)
        .map(|i| (m.row(i).iter().map(|d| d * d).sum::<f64>() / denom).sqrt())
        .collect();
    Ok(Spread {
        sigma: (sum_sq / denom).sqrt(),
        sigma_i,
    })
}

/// Indices `i` with `sigma_i <= lambda * sigma`, ascending.
pub fn candidate_set(ds: &Dataset, m: &DissimilarityMatrix, lambda: f64) -> Result<Vec<usize>> {
    let s = spread(ds, m)?;
    let bound = lambda * s.sigma;
    Ok(s
        .sigma_i
        .iter()
        .enumerate()
        .filter(|(_, &si)| si <= bound)
        .map(|(i, _)| i)
        .collect())
}

fn checked_candidates(
    ds: &Dataset,
    m: &DissimilarityMatrix,
    k: usize,
    params: &InckmParams,
) -> Result<Vec<usize>> {
    check_k(k, m.len())?;
    let cand = candidate_set(ds, m, params.lambda)?;
    if cand.len() < k {
        return Err(Error::CandidateSetTooSmall {
            lambda: params.lambda,
            candidates: cand.len(),
            k,
        });
    }
    Ok(cand)
}

/// Candidate farthest from its nearest medoid; lowest index on ties.
fn farthest_candidate(m: &DissimilarityMatrix, cand: &[usize], medoids: &[usize]) -> usize {
    let mut best = None;
    let mut best_d = f64::NEG_INFINITY;
    for &i in cand {
        if medoids.contains(&i) {
            continue;
        }
        let d = nearest(m, i, medoids).1;
        if d > best_d {
            best = Some(i);
            best_d = d;
        }
    }
    best.expect("candidate set holds at least K points")
}

/// Seeds `k` medoids from the candidate set without any refinement.
///
/// The first seed is the candidate with the smallest total distance to all
/// points; each further seed is the candidate farthest from the seeds so far.
pub fn inckm_seed(
    ds: &Dataset,
    m: &DissimilarityMatrix,
    k: usize,
    params: &InckmParams,
) -> Result<MedoidSet> {
    let cand = checked_candidates(ds, m, k, params)?;
    let mut medoids = vec![one_medoid_among(m, &cand)];
    while medoids.len() < k {
        medoids.push(farthest_candidate(m, &cand, &medoids));
    }
    Ok(MedoidSet::from_trusted(medoids))
}

/// Incremental k-medoids.
///
/// With `refine_each_stage`, the single seed is refined first, then each
/// farthest candidate is appended to the refined medoids and the enlarged set
/// is refined again. Otherwise the seeds of [`inckm_seed`] are refined once.
/// `iterations` totals the update steps of all refinements. Deterministic.
pub fn inckm(
    ds: &Dataset,
    m: &DissimilarityMatrix,
    k: usize,
    params: &InckmParams,
) -> Result<ClusteringResult> {
    if !params.refine_each_stage {
        let seeds = inckm_seed(ds, m, k, params)?;
        return Ok(fkm(m, &seeds));
    }
    let cand = checked_candidates(ds, m, k, params)?;
    let first = MedoidSet::from_trusted(vec![one_medoid_among(m, &cand)]);
    let mut res = fkm(m, &first);
    let mut iterations = res.iterations;
    while res.medoids.k() < k {
        let mut medoids = res.medoids.into_vec();
        medoids.push(farthest_candidate(m, &cand, &medoids));
        res = fkm(m, &MedoidSet::from_trusted(medoids));
        iterations += res.iterations;
    }
    res.iterations = iterations;
    Ok(res)
}

/// Runs [`inckm`] for every stretch factor in `lambdas` and keeps the lowest
/// objective (earliest factor on ties). Factors whose candidate set is too
/// small are skipped; if none works, the last error is returned.
pub fn inckm_sweep(
    ds: &Dataset,
    m: &DissimilarityMatrix,
    k: usize,
    lambdas: &[f64],
    refine_each_stage: bool,
) -> Result<(f64, ClusteringResult)> {
    let mut best: Option<(f64, ClusteringResult)> = None;
    let mut last_err = Error::Contract("empty stretch factor sweep".into());
    for &lambda in lambdas {
        let params = InckmParams::new(lambda)?.refine_each_stage(refine_each_stage);
        match inckm(ds, m, k, &params) {
            Ok(r) => {
                if best.as_ref().is_none_or(|(_, b)| r.se < b.se) {
                    best = Some((lambda, r));
                }
            }
            Err(e @ Error::CandidateSetTooSmall { .. }) => last_err = e,
            Err(e) => return Err(e),
        }
    }
    best.ok_or(last_err)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algorithms::fixtures::*;
    use crate::algorithms::{fkm, one_medoid};
    use crate::{build_dissimilarity, sum_of_errors};

    fn line_ds(xs: &[f64]) -> (Dataset, DissimilarityMatrix) {
        let ds = Dataset::new(xs.iter().map(|&x| vec![x]).collect(), None).unwrap();
        let m = build_dissimilarity(&ds, MetricKind::Euclidean).unwrap();
        (ds, m)
    }

    #[test]
    fn sweep_values() {
        let s = lambda_sweep();
        assert_eq!(s[0], 1.5);
        assert_eq!(s[5], 2.0);
        assert_eq!(s[10], 2.5);
    }

    #[test]
    fn rejects_nonpositive_lambda() {
        assert!(InckmParams::new(0.0).is_err());
        assert!(InckmParams::new(-1.0).is_err());
        assert!(InckmParams::new(f64::NAN).is_err());
    }

    #[test]
    fn three_point_spreads_by_hand() {
        // Mean 1; sigma = sqrt((1 + 0 + 1) / 2) = 1.
        // sigma_0 = sqrt((0 + 1 + 4) / 2), sigma_1 = 1, sigma_2 = sigma_0.
        let (ds, m) = line_ds(&[0.0, 1.0, 2.0]);
        let s = spread(&ds, &m).unwrap();
        assert_eq!(s.sigma, 1.0);
        assert_eq!(s.sigma_i, vec![2.5f64.sqrt(), 1.0, 2.5f64.sqrt()]);
        assert_eq!(candidate_set(&ds, &m, 1.0).unwrap(), vec![1]);
        assert_eq!(candidate_set(&ds, &m, 1.6).unwrap(), vec![0, 1, 2]);
    }

    #[test]
    fn huge_lambda_admits_everything() {
        let ds = random_points(25, 3, 1);
        let m = build_dissimilarity(&ds, MetricKind::Euclidean).unwrap();
        let p = InckmParams::new(1e9).unwrap();
        assert_eq!(candidate_set(&ds, &m, 1e9).unwrap().len(), 25);
        let seeds = inckm_seed(&ds, &m, 1, &p).unwrap();
        assert_eq!(seeds.indices(), &[one_medoid(&m)]);
    }

    #[test]
    fn second_seed_is_farthest_candidate() {
        let ds = random_points(30, 2, 2);
        let m = build_dissimilarity(&ds, MetricKind::Euclidean).unwrap();
        let p = InckmParams::new(2.0).unwrap();
        let cand = candidate_set(&ds, &m, 2.0).unwrap();
        let seeds = inckm_seed(&ds, &m, 2, &p).unwrap();
        let first = seeds.indices()[0];
        let second = seeds.indices()[1];
        for &c in &cand {
            assert!(m.get(c, first) <= m.get(second, first));
        }
        assert!(cand.contains(&second));
    }

    #[test]
    fn too_small_candidate_set_is_an_error() {
        let (ds, m) = line_ds(&[0.0, 1.0, 2.0]);
        let p = InckmParams::new(1.0).unwrap();
        match inckm_seed(&ds, &m, 2, &p) {
            Err(Error::CandidateSetTooSmall {
                lambda,
                candidates,
                k,
            }) => assert_eq!((lambda, candidates, k), (1.0, 1, 2)),
            other => panic!("unexpected {other:?}"),
        }
        assert!(inckm(&ds, &m, 2, &p).is_err());
    }

    #[test]
    fn single_medoid_equals_local_search_from_one_medoid() {
        let ds = random_points(40, 2, 3);
        let m = build_dissimilarity(&ds, MetricKind::Euclidean).unwrap();
        let r = inckm(&ds, &m, 1, &InckmParams::new(1.5).unwrap()).unwrap();
        let direct = fkm(&m, &MedoidSet::new(vec![one_medoid(&m)], 40).unwrap());
        assert_eq!(r.se, direct.se);
        assert_eq!(r.medoids, direct.medoids);
    }

    #[test]
    fn six_point_instance_reaches_optimum() {
        let (ds, m) = line_ds(&[0.0, 1.0, 2.0, 10.0, 11.0, 12.0]);
        let r = inckm(&ds, &m, 2, &InckmParams::new(2.5).unwrap()).unwrap();
        assert_eq!(r.se, 4.0);
        let r = inckm(&ds, &m, 2, &InckmParams::new(2.5).unwrap().refine_each_stage(false));
        assert_eq!(r.unwrap().se, 4.0);
    }

    #[test]
    fn deterministic_and_consistent() {
        let ds = random_points(80, 2, 4);
        let m = build_dissimilarity(&ds, MetricKind::Euclidean).unwrap();
        let p = InckmParams::new(1.8).unwrap();
        let a = inckm(&ds, &m, 4, &p).unwrap();
        let b = inckm(&ds, &m, 4, &p).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.se.to_bits(), b.se.to_bits());
        assert_eq!(a.se, sum_of_errors(&m, &a.medoids));
    }

    #[test]
    fn sweep_picks_the_lowest_objective() {
        let ds = random_points(60, 2, 6);
        let m = build_dissimilarity(&ds, MetricKind::Euclidean).unwrap();
        let (lambda, best) = inckm_sweep(&ds, &m, 3, &lambda_sweep(), true).unwrap();
        for l in lambda_sweep() {
            if let Ok(r) = inckm(&ds, &m, 3, &InckmParams::new(l).unwrap()) {
                assert!(best.se <= r.se);
            }
        }
        assert!(lambda_sweep().contains(&lambda));
    }

    #[test]
    fn dataset_and_matrix_must_agree() {
        let ds = random_points(5, 2, 1);
        let m = random_matrix(6, 1);
        assert!(matches!(spread(&ds, &m), Err(Error::Contract(_))));
    }
}
