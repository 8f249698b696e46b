//! Medoid sets and the sum-of-errors objective.
//!
//! The objective charges every point its dissimilarity to the nearest medoid.
//! Points are always visited in ascending index order, so the same medoids
//! always produce the same bits; the local search relies on that when it
//! stops on exact equality of successive values.

use crate::{DissimilarityMatrix, Error, Result};

/// Ordered list of `K ≥ 1` distinct point indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MedoidSet(Vec<usize>);

impl MedoidSet {
    /// Validates `indices` against a problem of `n` points.
    pub fn new(indices: Vec<usize>, n: usize) -> Result<Self> {
        if indices.is_empty() {
            return Err(Error::Contract("medoid set is empty".into()));
        }
        if indices.len() > n {
            return Err(Error::Contract(format!(
                "{} medoids for {n} points",
                indices.len()
            )));
        }
        if let Some(&bad) = indices.iter().find(|&&i| i >= n) {
            return Err(Error::Contract(format!(
                "medoid index {bad} out of range for {n} points"
            )));
        }
        let mut sorted = indices.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Contract("medoid indices are not distinct".into()));
        }
        Ok(Self(indices))
    }

    /// Caller guarantees the invariants; checked in debug builds.
    pub(crate) fn from_trusted(indices: Vec<usize>) -> Self {
        debug_assert!(!indices.is_empty());
        debug_assert!({
            let mut s = indices.clone();
            s.sort_unstable();
            s.windows(2).all(|w| w[0] != w[1])
        });
        Self(indices)
    }

    pub fn k(&self) -> usize {
        self.0.len()
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.contains(&i)
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }

    /// Medoid indices in ascending order.
    pub fn sorted(&self) -> Vec<usize> {
        let mut s = self.0.clone();
        s.sort_unstable();
        s
    }
}

/// Cluster ordinal of every point; `owner[i]` indexes into the medoid list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment {
    pub owner: Vec<usize>,
}

/// Outcome of one clustering run.
#[derive(Debug, Clone, PartialEq)]
pub struct ClusteringResult {
    pub medoids: MedoidSet,
    pub assignment: Assignment,
    pub se: f64,
    /// Number of medoid-update steps executed by the local search.
    pub iterations: usize,
}

impl ClusteringResult {
    pub(crate) fn evaluate(m: &DissimilarityMatrix, medoids: MedoidSet, iterations: usize) -> Self {
        let assignment = assign(m, &medoids);
        let se = se_of_slice(m, medoids.indices());
        Self {
            medoids,
            assignment,
            se,
            iterations,
        }
    }
}

/// Sum over points of the distance to the nearest medoid.
///
/// # Panics
///
/// Panics if a medoid index is out of range for `m`.
pub fn sum_of_errors(m: &DissimilarityMatrix, medoids: &MedoidSet) -> f64 {
    se_of_slice(m, medoids.indices())
}

pub(crate) fn se_of_slice(m: &DissimilarityMatrix, medoids: &[usize]) -> f64 {
    let mut se = 0.0;
    for i in 0..m.len() {
        se += nearest(m, i, medoids).1;
    }
    se
}

/// Nearest medoid of point `i` as `(ordinal, distance)`; lowest ordinal wins ties.
#[inline]
pub(crate) fn nearest(m: &DissimilarityMatrix, i: usize, medoids: &[usize]) -> (usize, f64) {
    let row = m.row(i);
    let mut best = (0, row[medoids[0]]);
    for (j, &c) in medoids.iter().enumerate().skip(1) {
        let d = row[c];
        if d < best.1 {
            best = (j, d);
        }
    }
    best
}

/// Assigns every point to its nearest medoid, ties going to the lowest ordinal.
pub fn assign(m: &DissimilarityMatrix, medoids: &MedoidSet) -> Assignment {
    Assignment {
        owner: assign_slice(m, medoids.indices()),
    }
}

pub(crate) fn assign_slice(m: &DissimilarityMatrix, medoids: &[usize]) -> Vec<usize> {
    (0..m.len()).map(|i| nearest(m, i, medoids).0).collect()
}

/// Assignment and objective in one pass; the objective bits equal [`se_of_slice`].
pub(crate) fn assign_with_se(m: &DissimilarityMatrix, medoids: &[usize]) -> (Vec<usize>, f64) {
    let mut owner = Vec::with_capacity(m.len());
    let mut se = 0.0;
    for i in 0..m.len() {
        let (j, d) = nearest(m, i, medoids);
        owner.push(j);
        se += d;
    }
    (owner, se)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{build_dissimilarity, Dataset, MetricKind, RngStream};
    use proptest::prelude::*;
    use rand::Rng;

    fn line(xs: &[f64]) -> DissimilarityMatrix {
        let ds = Dataset::new(xs.iter().map(|&x| vec![x]).collect(), None).unwrap();
        build_dissimilarity(&ds, MetricKind::Euclidean).unwrap()
    }

    fn random_matrix(n: usize, seed: u64) -> DissimilarityMatrix {
        let mut rng = RngStream::new(seed);
        let pts = (0..n)
            .map(|_| vec![rng.random::<f64>(), rng.random::<f64>()])
            .collect();
        build_dissimilarity(&Dataset::new(pts, None).unwrap(), MetricKind::Euclidean).unwrap()
    }

    #[test]
    fn medoid_set_contract() {
        assert!(matches!(MedoidSet::new(vec![], 3), Err(Error::Contract(_))));
        assert!(MedoidSet::new(vec![0, 0], 3).is_err());
        assert!(MedoidSet::new(vec![3], 3).is_err());
        assert!(MedoidSet::new(vec![0, 1, 2, 0], 3).is_err());
        assert_eq!(MedoidSet::new(vec![2, 0], 3).unwrap().sorted(), vec![0, 2]);
    }

    #[test]
    fn every_point_a_medoid_gives_zero() {
        let m = line(&[0.0, 3.0, 7.0, 8.0]);
        let all = MedoidSet::new(vec![3, 1, 0, 2], 4).unwrap();
        assert_eq!(sum_of_errors(&m, &all), 0.0);
    }

    #[test]
    fn middle_medoid_on_a_line() {
        let m = line(&[0.0, 1.0, 2.0]);
        assert_eq!(sum_of_errors(&m, &MedoidSet::new(vec![1], 3).unwrap()), 2.0);
    }

    #[test]
    fn matches_brute_force_objective() {
        // Evaluates the objective through an explicit 0/1 assignment matrix.
        let m = random_matrix(12, 3);
        let med = MedoidSet::new(vec![4, 9], 12).unwrap();
        let mut s = [[0u8; 2]; 12];
        for (i, row) in s.iter_mut().enumerate() {
            let (d0, d1) = (m.get(i, 4), m.get(i, 9));
            row[if d1 < d0 { 1 } else { 0 }] = 1;
        }
        let mut brute = 0.0;
        for (i, row) in s.iter().enumerate() {
            for (j, &c) in [4usize, 9].iter().enumerate() {
                brute += f64::from(row[j]) * m.get(i, c);
            }
        }
        assert!((sum_of_errors(&m, &med) - brute).abs() < 1e-12);
    }

    #[test]
    fn medoid_owns_itself() {
        let m = line(&[0.0, 5.0, 9.0]);
        let a = assign(&m, &MedoidSet::new(vec![2, 0], 3).unwrap());
        assert_eq!(a.owner, vec![1, 0, 0]);
    }

    #[test]
    fn equidistant_goes_to_first_ordinal() {
        let m = line(&[0.0, 1.0, 2.0]);
        let a = assign(&m, &MedoidSet::new(vec![2, 0], 3).unwrap());
        assert_eq!(a.owner[1], 0);
        let a = assign(&m, &MedoidSet::new(vec![0, 2], 3).unwrap());
        assert_eq!(a.owner[1], 0);
    }

    #[test]
    fn assign_matches_naive_scan() {
        let m = random_matrix(15, 8);
        let med = [2usize, 7, 11];
        let a = assign(&m, &MedoidSet::new(med.to_vec(), 15).unwrap());
        for i in 0..15 {
            let mut best = 0;
            for j in 1..3 {
                if m.get(i, med[j]) < m.get(i, med[best]) {
                    best = j;
                }
            }
            assert_eq!(a.owner[i], best);
        }
    }

    proptest! {
        #[test]
        fn se_invariant_under_permutation(seed in 0u64..500, rot in 0usize..4) {
            let m = random_matrix(14, seed);
            let mut med = vec![1usize, 5, 8, 13];
            let a = sum_of_errors(&m, &MedoidSet::new(med.clone(), 14).unwrap());
            med.rotate_left(rot);
            med.swap(0, 3);
            let b = sum_of_errors(&m, &MedoidSet::new(med, 14).unwrap());
            prop_assert_eq!(a, b);
        }

        #[test]
        fn adding_a_center_never_increases_se(seed in 0u64..500, extra in 0usize..14) {
            let m = random_matrix(14, seed);
            let base = vec![0usize, 6];
            let a = sum_of_errors(&m, &MedoidSet::new(base.clone(), 14).unwrap());
            prop_assume!(!base.contains(&extra));
            let mut more = base;
            more.push(extra);
            let b = sum_of_errors(&m, &MedoidSet::new(more, 14).unwrap());
            prop_assert!(b <= a);
        }

        #[test]
        fn assignment_sum_equals_se_exactly(seed in 0u64..500) {
            let m = random_matrix(16, seed);
            let med = MedoidSet::new(vec![3, 10, 1], 16).unwrap();
            let a = assign(&m, &med);
            let mut total = 0.0;
            for (i, &o) in a.owner.iter().enumerate() {
                total += m.get(i, med.indices()[o]);
            }
            prop_assert_eq!(total, sum_of_errors(&m, &med));
        }
    }
}
