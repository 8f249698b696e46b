//! Cluster-wise medoid local search.
//!
//! Each iteration replaces every medoid by the member of its cluster with the
//! smallest total distance to the other members, reassigns all points, and
//! stops once the objective repeats exactly.

use crate::objective::{assign_with_se, se_of_slice};
use crate::{ClusteringResult, DissimilarityMatrix, MedoidSet};

/// Safety cap on medoid-update steps; floating-point cycles are the only way to reach it.
pub const MAX_ITERATIONS: usize = 500;

/// Objective values observed by one local-search run.
#[derive(Debug, Clone, PartialEq)]
pub struct FkmTrace {
    /// The initial objective followed by the value after every update step.
    pub se_history: Vec<f64>,
    /// True if the run stopped at [`MAX_ITERATIONS`] rather than on a repeated objective.
    pub capped: bool,
}

/// Runs the local search from `initial`; see [`fkm_traced`].
pub fn fkm(m: &DissimilarityMatrix, initial: &MedoidSet) -> ClusteringResult {
    fkm_traced(m, initial).0
}

/// Runs the local search from `initial` and records the objective after each step.
///
/// The returned objective never exceeds that of `initial`. A cluster left
/// without members keeps its medoid. When candidates tie with the current
/// medoid the current one stays, so an already converged configuration is
/// returned unchanged after a single step.
///
/// # Panics
///
/// Panics if `initial` holds an index out of range for `m`.
pub fn fkm_traced(m: &DissimilarityMatrix, initial: &MedoidSet) -> (ClusteringResult, FkmTrace) {
    let mut medoids = initial.indices().to_vec();
    let (mut owner, mut se) = assign_with_se(m, &medoids);
    let mut history = vec![se];
    let mut iterations = 0;
    let mut capped = false;
    loop {
        iterations += 1;
        let next = update_medoids(m, &medoids, &owner);
        let (next_owner, next_se) = assign_with_se(m, &next);
        history.push(next_se);
        if next_se < se {
            medoids = next;
            owner = next_owner;
            se = next_se;
            if iterations >= MAX_ITERATIONS {
                capped = true;
                break;
            }
            continue;
        }
        if next_se == se {
            medoids = next;
            owner = next_owner;
        }
        // A larger value can only come from rounding; the previous medoids stand.
        break;
    }
    debug_assert_eq!(se, se_of_slice(m, &medoids));
    let result = ClusteringResult {
        medoids: MedoidSet::from_trusted(medoids),
        assignment: crate::Assignment { owner },
        se,
        iterations,
    };
    (
        result,
        FkmTrace {
            se_history: history,
            capped,
        },
    )
}

/// One medoid-update step over the clusters described by `owner`.
fn update_medoids(m: &DissimilarityMatrix, medoids: &[usize], owner: &[usize]) -> Vec<usize> {
    let k = medoids.len();
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); k];
    for (i, &o) in owner.iter().enumerate() {
        members[o].push(i);
    }
    let mut is_medoid = vec![false; m.len()];
    for &c in medoids {
        is_medoid[c] = true;
    }

    let mut next = medoids.to_vec();
    for (j, mem) in members.iter().enumerate() {
        if mem.is_empty() {
            continue;
        }
        let incumbent = medoids[j];
        let mut best = incumbent;
        let mut best_cost = cost_within(m.row(incumbent), mem, f64::INFINITY);
        for &x in mem {
            // Another cluster's medoid can sit in this cluster only through a zero
            // distance tie; taking it would duplicate a medoid.
            if x == incumbent || is_medoid[x] {
                continue;
            }
            let cost = cost_within(m.row(x), mem, best_cost);
            if cost < best_cost {
                best = x;
                best_cost = cost;
            }
        }
        next[j] = best;
    }
    next
}

/// Sum of `row[y]` over `members`, abandoned once it exceeds `bound`.
#[inline]
fn cost_within(row: &[f64], members: &[usize], bound: f64) -> f64 {
    let mut s = 0.0;
    for &y in members {
        s += row[y];
        if s > bound {
            return s;
        }
    }
    s
}
