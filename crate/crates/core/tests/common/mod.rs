#![allow(dead_code)]

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use treegh::metric_tree::Edge;
use treegh::{MergeTree, MetricTree, Rational};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Positive rational `k / d` with `k` in `1..=num_max`, `d` in {1, 2, 3}.
pub fn length(r: &mut ChaCha8Rng, num_max: i64) -> Rational {
    Rational::new(r.gen_range(1..=num_max), r.gen_range(1..=3))
}

/// Random recursive tree on `n` nodes with rational edge lengths.
pub fn metric_tree(r: &mut ChaCha8Rng, n: usize) -> MetricTree {
    let edges = (1..n)
        .map(|v| Edge {
            u: r.gen_range(0..v),
            v,
            length: length(r, 6),
        })
        .collect();
    MetricTree::new(n, edges).unwrap()
}

/// Random merge tree on at most `max_nodes` nodes with at most
/// `max_leaves` leaves; edges drop by `length(r, num_max)`.
pub fn merge_tree(r: &mut ChaCha8Rng, max_nodes: usize, max_leaves: usize, num_max: i64) -> MergeTree {
    loop {
        let n = r.gen_range(1..=max_nodes);
        let mut heights = vec![Rational::new(r.gen_range(-4..=4), 2)];
        let mut parent = vec![None];
        for v in 1..n {
            let p = r.gen_range(0..v);
            heights.push(&heights[p] - length(r, num_max));
            parent.push(Some(p));
        }
        let m = MergeTree::new(heights, parent).unwrap();
        if m.leaves().len() <= max_leaves {
            return m;
        }
    }
}

/// Random merge tree on exactly `n` nodes with unit edges.
pub fn unit_merge_tree(r: &mut ChaCha8Rng, n: usize) -> MergeTree {
    let mut heights = vec![Rational::zero()];
    let mut parent = vec![None];
    for v in 1..n {
        let p = r.gen_range(0..v);
        heights.push(&heights[p] - Rational::one());
        parent.push(Some(p));
    }
    MergeTree::new(heights, parent).unwrap()
}

pub fn bipartite(r: &mut ChaCha8Rng, max_side: usize) -> (usize, usize, Vec<(usize, usize)>) {
    let (a, b) = (r.gen_range(1..=max_side), r.gen_range(1..=max_side));
    let p: f64 = r.gen_range(0.05..0.6);
    let mut edges = Vec::new();
    for u in 0..a {
        for v in 0..b {
            if r.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    (a, b, edges)
}

/// Maximum matching size by a subset DP over the right side.
pub fn matching_bruteforce(a: usize, b: usize, edges: &[(usize, usize)]) -> usize {
    let mut adj = vec![0u32; a];
    for &(u, v) in edges {
        adj[u] |= 1 << v;
    }
    // best[mask]: largest matching of the first k left vertices using `mask`
    let mut best = vec![-1i32; 1 << b];
    best[0] = 0;
    for &row in &adj {
        let mut next = best.clone();
        for mask in 0..(1usize << b) {
            if best[mask] < 0 {
                continue;
            }
            let mut free = row & !(mask as u32);
            while free != 0 {
                let bit = free & free.wrapping_neg();
                let m2 = mask | bit as usize;
                next[m2] = next[m2].max(best[mask] + 1);
                free ^= bit;
            }
        }
        best = next;
    }
    best.into_iter().max().unwrap() as usize
}
