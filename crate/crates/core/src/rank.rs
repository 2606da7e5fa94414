//! Turning score vectors into deterministic rankings.
//!
//! Two notions of rank coexist: display order (positions 1..n, ties
//! broken by author name so output files are stable) and mean ranks
//! (ties share the average of their positions), which is what rank
//! correlation needs.

use crate::NodeId;

/// Nodes ordered by score descending; ties fall back to canonical name
/// ascending, then id. `names[v]` must exist for every node.
pub fn order_desc_by_score(scores: &[f64], names: &[String]) -> Vec<NodeId> {
    let mut order: Vec<NodeId> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| {
        scores[b]
            .partial_cmp(&scores[a])
            .unwrap()
            .then_with(|| names[a].cmp(&names[b]))
            .then(a.cmp(&b))
    });
    order
}

/// Mean ranks of `values`, 1-based, ascending: the smallest value gets
/// rank 1 and a tie group shares the average of the positions it spans.
pub fn mean_ranks(values: &[f64]) -> Vec<f64> {
    let n = values.len();
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&a, &b| values[a].partial_cmp(&values[b]).unwrap());
    let mut ranks = vec![0.0; n];
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && values[idx[end]] == values[idx[start]] {
            end += 1;
        }
        // Positions start+1 ..= end share their mean.
        let mean = (start + 1 + end) as f64 / 2.0;
        for &i in &idx[start..end] {
            ranks[i] = mean;
        }
        start = end;
    }
    ranks
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn mean_ranks_average_over_ties() {
        assert_eq!(mean_ranks(&[10.0, 20.0, 20.0, 30.0]), vec![1.0, 2.5, 2.5, 4.0]);
        assert_eq!(mean_ranks(&[5.0, 5.0, 5.0]), vec![2.0, 2.0, 2.0]);
        assert_eq!(mean_ranks(&[]), Vec::<f64>::new());
    }

    #[test]
    fn order_breaks_ties_by_name() {
        let scores = [1.0, 2.0, 1.0];
        let names: Vec<String> = ["Carol", "Alice", "Bob"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        assert_eq!(order_desc_by_score(&scores, &names), vec![1, 2, 0]);
    }

    proptest! {
        #[test]
        fn mean_ranks_sum_to_the_triangular_number(values in proptest::collection::vec(-50i32..50, 1..40)) {
            let values: Vec<f64> = values.into_iter().map(f64::from).collect();
            let ranks = mean_ranks(&values);
            let n = values.len() as f64;
            let total: f64 = ranks.iter().sum();
            prop_assert!((total - n * (n + 1.0) / 2.0).abs() < 1e-9);
        }

        #[test]
        fn ranking_respects_order(values in proptest::collection::vec(-50i32..50, 2..30)) {
            let values: Vec<f64> = values.into_iter().map(f64::from).collect();
            let ranks = mean_ranks(&values);
            for i in 0..values.len() {
                for j in 0..values.len() {
                    if values[i] < values[j] {
                        prop_assert!(ranks[i] < ranks[j]);
                    } else if values[i] == values[j] {
                        prop_assert_eq!(ranks[i], ranks[j]);
                    }
                }
            }
        }

        #[test]
        fn display_order_is_a_permutation(values in proptest::collection::vec(-5i32..5, 1..25)) {
            let scores: Vec<f64> = values.iter().map(|&v| f64::from(v)).collect();
            let names: Vec<String> = (0..scores.len()).map(|i| format!("N{i:03}")).collect();
            let order = order_desc_by_score(&scores, &names);
            let mut seen = vec![false; scores.len()];
            for &v in &order {
                prop_assert!(!seen[v]);
                seen[v] = true;
            }
            for w in order.windows(2) {
                prop_assert!(scores[w[0]] >= scores[w[1]]);
            }
        }
    }
}
