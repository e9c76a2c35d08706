//! Exact decision when every finite edge is longer than `2 eps`.
//!
//! `phi(u, v)` holds iff the subtrees below `u` and `v` (each with its own
//! infinite edge) are `eps`-interleaved. In the long-edge regime it holds
//! exactly when the heights are within `eps`, the child counts agree, and
//! the children admit a perfect matching of `phi`-pairs.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::interleave::maps::TreeMap;
use crate::interleave::matching::hopcroft_karp;
use crate::merge_tree::{MergePoint, MergeTree};
use crate::rational::Rational;

/// Every finite edge strictly longer than `2 eps`.
pub fn all_edges_long(m: &MergeTree, eps: &Rational) -> bool {
    let twice = eps.mul_int(2);
    (0..m.node_count()).all(|v| match m.parent(v) {
        Some(p) => m.height(p) - m.height(v) > twice,
        None => true,
    })
}

fn check_preconditions(m: &MergeTree, eps: &Rational, side: &str) -> Result<()> {
    if let Some(v) = (0..m.node_count()).find(|&v| m.children(v).len() == 1) {
        return Err(Error::Precondition(format!(
            "{side} tree has a degree-two node {v}; suppress it first"
        )));
    }
    if !all_edges_long(m, eps) {
        return Err(Error::Precondition(format!(
            "{side} tree has an edge of length at most 2*{eps}"
        )));
    }
    Ok(())
}

/// Exact answer to `d_I(mf, mg) <= eps` for suppressed long-edge trees.
/// On YES returns maps raising every height by exactly `eps`.
pub fn decide_long(
    mf: &MergeTree,
    mg: &MergeTree,
    eps: &Rational,
) -> Result<Option<(TreeMap, TreeMap)>> {
    if eps.is_negative() {
        return Err(Error::InvalidArgument(format!("eps must be non-negative, got {eps}")));
    }
    check_preconditions(mf, eps, "first")?;
    check_preconditions(mg, eps, "second")?;

    let mut by_height: Vec<usize> = (0..mg.node_count()).collect();
    by_height.sort_by(|&a, &b| mg.height(a).cmp(mg.height(b)));

    // for each phi-pair, the matched child of v for every child index of u
    let mut phi: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for &u in mf.top_down().iter().rev() {
        let lo = mf.height(u) - eps;
        let hi = mf.height(u) + eps;
        let start = by_height.partition_point(|&v| *mg.height(v) < lo);
        let cu = mf.children(u);
        for &v in &by_height[start..] {
            if *mg.height(v) > hi {
                break;
            }
            let cv = mg.children(v);
            if cu.len() != cv.len() {
                continue;
            }
            let mut edges = Vec::new();
            for (i, &a) in cu.iter().enumerate() {
                for (j, &b) in cv.iter().enumerate() {
                    if phi.contains_key(&(a, b)) {
                        edges.push((i, j));
                    }
                }
            }
            let m = hopcroft_karp(cu.len(), cv.len(), &edges);
            if m.is_perfect() {
                let perm = m.left.iter().map(|j| cv[j.expect("perfect")]).collect();
                phi.insert((u, v), perm);
            }
        }
    }

    let (rf, rg) = (mf.root(), mg.root());
    if !phi.contains_key(&(rf, rg)) {
        return Ok(None);
    }
    let mut alpha = vec![MergePoint::node(0); mf.node_count()];
    let mut beta = vec![MergePoint::node(0); mg.node_count()];
    let mut stack = vec![(rf, rg)];
    while let Some((u, v)) = stack.pop() {
        let (fu, gv) = (mf.height(u), mg.height(v));
        alpha[u] = mg.shift(&MergePoint::node(v), &(fu + eps - gv));
        beta[v] = mf.shift(&MergePoint::node(u), &(gv + eps - fu));
        for (&a, &b) in mf.children(u).iter().zip(&phi[&(u, v)]) {
            stack.push((a, b));
        }
    }
    Ok(Some((TreeMap::new(alpha), TreeMap::new(beta))))
}
