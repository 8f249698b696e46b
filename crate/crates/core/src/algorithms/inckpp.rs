//! D²-seeded algorithms: the incremental variant and plain k-means++ seeding.

use super::check_k;
use super::fkm::fkm;
use super::seeding::{dsquared_or_uniform, kpp_seed, one_medoid, uniform_seed};
use crate::objective::se_of_slice;
use crate::{ClusteringResult, DissimilarityMatrix, MedoidSet, Result, RngStream};

/// Objective values around one incremental stage.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StageRecord {
    /// Number of medoids after the stage.
    pub k: usize,
    /// Objective right after appending the drawn medoid.
    pub se_appended: f64,
    /// Objective after refining the enlarged set.
    pub se_refined: f64,
}

/// Incremental k-medoids with D² seeding.
///
/// Starts from the exact 1-medoid and, for each `k` in `2..=K`, draws a new
/// medoid by D² sampling against the current medoids and refines all `k`
/// medoids with the local search. Needs nothing besides `K` and the random
/// stream. With `K = 1` no refinement runs and `iterations` is 0.
pub fn inckpp(m: &DissimilarityMatrix, k: usize, rng: &mut RngStream) -> Result<ClusteringResult> {
    inckpp_traced(m, k, rng).map(|(r, _)| r)
}

/// [`inckpp`] plus the objective before and after every refinement.
pub fn inckpp_traced(
    m: &DissimilarityMatrix,
    k: usize,
    rng: &mut RngStream,
) -> Result<(ClusteringResult, Vec<StageRecord>)> {
    check_k(k, m.len())?;
    let mut res =
        ClusteringResult::evaluate(m, MedoidSet::from_trusted(vec![one_medoid(m)]), 0);
    let mut stages = Vec::with_capacity(k.saturating_sub(1));
    let mut iterations = 0;
    while res.medoids.k() < k {
        let mut medoids = res.medoids.into_vec();
        let next = dsquared_or_uniform(m, &medoids, rng);
        medoids.push(next);
        let se_appended = se_of_slice(m, &medoids);
        res = fkm(m, &MedoidSet::from_trusted(medoids));
        iterations += res.iterations;
        stages.push(StageRecord {
            k: res.medoids.k(),
            se_appended,
            se_refined: res.se,
        });
    }
    res.iterations = iterations;
    Ok((res, stages))
}

/// k-means++ seeding followed by one local search.
pub fn kpp(m: &DissimilarityMatrix, k: usize, rng: &mut RngStream) -> Result<ClusteringResult> {
    let seeds = kpp_seed(m, k, rng)?;
    Ok(fkm(m, &seeds))
}

/// Local search from `k` uniformly drawn medoids.
pub fn fkm_random(
    m: &DissimilarityMatrix,
    k: usize,
    rng: &mut RngStream,
) -> Result<ClusteringResult> {
    let seeds = uniform_seed(m.len(), k, rng)?;
    Ok(fkm(m, &seeds))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algorithms::fixtures::*;
    use crate::sum_of_errors;

    #[test]
    fn single_medoid_is_the_one_medoid() {
        let m = random_matrix(30, 1);
        let r = inckpp(&m, 1, &mut RngStream::new(0)).unwrap();
        assert_eq!(r.medoids.indices(), &[one_medoid(&m)]);
        assert_eq!(r.iterations, 0);
        let row_sum: f64 = m.row(one_medoid(&m)).iter().sum();
        assert!((r.se - row_sum).abs() < 1e-9);
    }

    #[test]
    fn six_point_optimum_in_almost_every_run() {
        let m = six();
        let hits = (0..1_000)
            .filter(|&s| inckpp(&m, 2, &mut RngStream::new(s)).unwrap().se == 4.0)
            .count();
        assert!(hits >= 990, "{hits}");
    }

    #[test]
    fn kpp_six_point_optimum_and_monotone() {
        let m = six();
        let mut hits = 0;
        for s in 0..1_000 {
            let seeds = kpp_seed(&m, 2, &mut RngStream::new(s)).unwrap();
            let r = kpp(&m, 2, &mut RngStream::new(s)).unwrap();
            assert!(r.se <= sum_of_errors(&m, &seeds));
            hits += usize::from(r.se == 4.0);
        }
        assert!(hits >= 950, "{hits}");
    }

    #[test]
    fn kpp_with_every_point_a_medoid() {
        let m = random_matrix(7, 2);
        let r = kpp(&m, 7, &mut RngStream::new(3)).unwrap();
        assert_eq!(r.se, 0.0);
        assert_eq!(r.iterations, 1);
    }

    #[test]
    fn stages_never_increase_the_objective() {
        for seed in 0..30 {
            let m = random_matrix(50, seed);
            let (res, stages) = inckpp_traced(&m, 5, &mut RngStream::new(seed)).unwrap();
            assert_eq!(stages.len(), 4);
            for s in &stages {
                assert!(s.se_refined <= s.se_appended);
            }
            assert_eq!(res.se, stages.last().unwrap().se_refined);
            assert_eq!(res.se, sum_of_errors(&m, &res.medoids));
        }
    }

    #[test]
    fn duplicated_points_use_uniform_fallback() {
        let m = line(&[2.0, 2.0, 2.0, 2.0]);
        let r = inckpp(&m, 3, &mut RngStream::new(4)).unwrap();
        assert_eq!(r.medoids.k(), 3);
        assert_eq!(r.se, 0.0);
    }

    #[test]
    fn fkm_random_is_seeded() {
        let m = random_matrix(40, 9);
        let a = fkm_random(&m, 3, &mut RngStream::new(1)).unwrap();
        let b = fkm_random(&m, 3, &mut RngStream::new(1)).unwrap();
        assert_eq!(a, b);
    }
}
