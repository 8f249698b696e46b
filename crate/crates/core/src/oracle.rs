//! Exact k-medoids by enumerating every medoid subset.

use crate::algorithms::check_k;
use crate::objective::se_of_slice;
use crate::{DissimilarityMatrix, Error, MedoidSet, Result};

/// Largest number of subsets the enumeration will visit.
pub const MAX_SUBSETS: u128 = 10_000_000;

#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult {
    pub best_se: f64,
    /// Every optimal subset, each ascending, in lexicographic order.
    pub best_medoids: Vec<MedoidSet>,
    /// Number of subsets evaluated, always `C(n, K)`.
    pub enumerated: u64,
}

/// `C(n, k)`, saturating at `u128::MAX`.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Global optimum of the k-medoids objective over all `C(n, K)` subsets.
///
/// Objective values are compared exactly; every subset attaining the minimum
/// is kept. Fails with [`Error::Capacity`] above [`MAX_SUBSETS`] subsets.
pub fn exhaustive_kmedoids(m: &DissimilarityMatrix, k: usize) -> Result<OracleResult> {
    let n = m.len();
    check_k(k, n)?;
    let total = binomial(n, k);
    if total > MAX_SUBSETS {
        return Err(Error::Capacity(format!(
            "C({n}, {k}) = {total} subsets exceed the limit of {MAX_SUBSETS}"
        )));
    }

    let mut subset: Vec<usize> = (0..k).collect();
    let mut best_se = f64::INFINITY;
    let mut best = Vec::new();
    let mut enumerated = 0u64;
    loop {
        enumerated += 1;
        let se = se_of_slice(m, &subset);
        if se < best_se {
            best_se = se;
            best.clear();
        }
        if se == best_se {
            best.push(MedoidSet::from_trusted(subset.clone()));
        }
        // Advance to the next subset in lexicographic order.
        let Some(pos) = (0..k).rev().find(|&i| subset[i] < n - k + i) else {
            break;
        };
        subset[pos] += 1;
        for i in pos + 1..k {
            subset[i] = subset[i - 1] + 1;
        }
    }
    debug_assert_eq!(u128::from(enumerated), total);
    Ok(OracleResult {
        best_se,
        best_medoids: best,
        enumerated,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algorithms::fixtures::*;
    use crate::algorithms::one_medoid;
    use crate::{build_dissimilarity, sum_of_errors, Dataset, MetricKind};

    #[test]
    fn binomials() {
        assert_eq!(binomial(6, 2), 15);
        assert_eq!(binomial(14, 3), 364);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(50, 25), 126_410_606_437_752);
    }

    #[test]
    fn six_point_instance() {
        let r = exhaustive_kmedoids(&six(), 2).unwrap();
        assert_eq!(r.best_se, 4.0);
        assert_eq!(r.enumerated, 15);
        assert_eq!(r.best_medoids, vec![MedoidSet::new(vec![1, 4], 6).unwrap()]);
    }

    #[test]
    fn all_points_as_medoids() {
        let m = random_matrix(7, 1);
        let r = exhaustive_kmedoids(&m, 7).unwrap();
        assert_eq!(r.best_se, 0.0);
        assert_eq!(r.best_medoids.len(), 1);
        assert_eq!(r.enumerated, 1);
    }

    #[test]
    fn single_medoid_agrees_with_one_medoid() {
        for seed in 0..10 {
            let m = random_matrix(11, seed);
            let r = exhaustive_kmedoids(&m, 1).unwrap();
            let c = one_medoid(&m);
            assert_eq!(r.best_se, sum_of_errors(&m, &MedoidSet::new(vec![c], 11).unwrap()));
            assert!(r.best_medoids.iter().any(|s| s.indices() == [c]));
        }
    }

    #[test]
    fn ties_are_all_reported() {
        // Symmetric square: every pair of opposite corners is optimal for K = 2.
        let pts = vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![1.0, 1.0], vec![0.0, 1.0]];
        let m = build_dissimilarity(&Dataset::new(pts, None).unwrap(), MetricKind::Manhattan).unwrap();
        let r = exhaustive_kmedoids(&m, 2).unwrap();
        assert_eq!(r.best_se, 2.0);
        assert_eq!(r.best_medoids.len(), 6);
        for s in &r.best_medoids {
            assert_eq!(sum_of_errors(&m, s), r.best_se);
        }
    }

    #[test]
    fn permutation_and_duplicates() {
        let ds = random_points(10, 2, 5);
        let m = build_dissimilarity(&ds, MetricKind::Euclidean).unwrap();
        let base = exhaustive_kmedoids(&m, 3).unwrap().best_se;

        let mut pts = ds.points().to_vec();
        pts.reverse();
        pts.swap(2, 7);
        let permuted = build_dissimilarity(&Dataset::new(pts.clone(), None).unwrap(), MetricKind::Euclidean).unwrap();
        assert!((exhaustive_kmedoids(&permuted, 3).unwrap().best_se - base).abs() < 1e-12);

        // A copy of an optimal medoid costs nothing, so the optimum cannot rise.
        let opt = exhaustive_kmedoids(&m, 3).unwrap();
        let mut pts = ds.points().to_vec();
        pts.push(pts[opt.best_medoids[0].indices()[1]].clone());
        let dup = build_dissimilarity(&Dataset::new(pts, None).unwrap(), MetricKind::Euclidean).unwrap();
        assert!(exhaustive_kmedoids(&dup, 3).unwrap().best_se <= base);
    }

    #[test]
    fn refuses_huge_enumerations() {
        let m = random_matrix(60, 2);
        assert!(matches!(exhaustive_kmedoids(&m, 10), Err(Error::Capacity(_))));
    }
}
