//! Proptest generators shared by unit tests.

use proptest::prelude::*;

use crate::merge_tree::MergeTree;
use crate::metric_tree::{Edge, MetricTree};
use crate::rational::Rational;

/// Random metric tree; node `i > 0` hangs off a smaller id.
pub fn arb_tree(max_nodes: usize) -> impl Strategy<Value = MetricTree> {
    (1..=max_nodes).prop_flat_map(|n| {
        let parents: Vec<BoxedStrategy<usize>> = (1..n).map(|i| (0..i).boxed()).collect();
        let lengths = prop::collection::vec((1i64..12, 1i64..4), n - 1);
        (Just(n), parents, lengths).prop_map(|(n, parents, lengths)| {
            let edges = parents
                .into_iter()
                .zip(lengths)
                .enumerate()
                .map(|(i, (p, (num, den)))| Edge {
                    u: p,
                    v: i + 1,
                    length: Rational::new(num, den),
                })
                .collect();
            MetricTree::new(n, edges).unwrap()
        })
    })
}

/// Random merge tree with half-integer heights.
pub fn arb_merge_tree(max_nodes: usize) -> impl Strategy<Value = MergeTree> {
    (1..=max_nodes).prop_flat_map(|n| {
        let parents: Vec<BoxedStrategy<usize>> = (1..n).map(|i| (0..i).boxed()).collect();
        let drops = prop::collection::vec(1i64..9, n - 1);
        (Just(n), parents, drops, -5i64..5).prop_map(|(n, parents, drops, top)| {
            let mut heights = vec![Rational::from_integer(top)];
            let mut parent = vec![None];
            for i in 1..n {
                let p = parents[i - 1];
                let h = &heights[p] - Rational::new(drops[i - 1], 2);
                heights.push(h);
                parent.push(Some(p));
            }
            MergeTree::new(heights, parent).unwrap()
        })
    })
}
