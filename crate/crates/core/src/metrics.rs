//! External agreement between two partitions.

use std::collections::HashMap;
use std::hash::Hash;

/// Adjusted Rand index of two labelings of the same points.
///
/// 1 for identical partitions (up to renaming), about 0 for independent ones.
/// Two single-cluster labelings, which the usual formula leaves undefined,
/// score 1.
///
/// # Panics
///
/// Panics if the labelings differ in length.
pub fn adjusted_rand_index<A, B>(a: &[A], b: &[B]) -> f64
where
    A: Eq + Hash,
    B: Eq + Hash,
{
    assert_eq!(a.len(), b.len(), "labelings differ in length");
    let pairs = |c: u64| (c * c.saturating_sub(1) / 2) as f64;

    let mut table: HashMap<(&A, &B), u64> = HashMap::new();
    let mut rows: HashMap<&A, u64> = HashMap::new();
    let mut cols: HashMap<&B, u64> = HashMap::new();
    for (x, y) in a.iter().zip(b) {
        *table.entry((x, y)).or_default() += 1;
        *rows.entry(x).or_default() += 1;
        *cols.entry(y).or_default() += 1;
    }
    let index: f64 = table.values().map(|&c| pairs(c)).sum();
    let sum_rows: f64 = rows.values().map(|&c| pairs(c)).sum();
    let sum_cols: f64 = cols.values().map(|&c| pairs(c)).sum();
    let total = pairs(a.len() as u64);
    let expected = if total > 0.0 {
        sum_rows * sum_cols / total
    } else {
        0.0
    };
    let max = 0.5 * (sum_rows + sum_cols);
    if max == expected {
        return 1.0;
    }
    (index - expected) / (max - expected)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identical_up_to_renaming() {
        let a = [0, 0, 1, 1, 2];
        let b = ['x', 'x', 'y', 'y', 'z'];
        assert_eq!(adjusted_rand_index(&a, &b), 1.0);
    }

    #[test]
    fn known_value() {
        // Contingency [[2,1],[0,2]]: index 2, row pairs 3+1, col pairs 1+3, total 10.
        // expected = 4*4/10 = 1.6, max = 4, ari = 0.4/2.4.
        let a = [0, 0, 0, 1, 1];
        let b = [0, 0, 1, 1, 1];
        assert!((adjusted_rand_index(&a, &b) - 0.4 / 2.4).abs() < 1e-12);
    }

    #[test]
    fn trivial_partitions() {
        assert_eq!(adjusted_rand_index(&[1, 1, 1], &[5, 5, 5]), 1.0);
        assert_eq!(adjusted_rand_index::<u8, u8>(&[], &[]), 1.0);
    }
}
