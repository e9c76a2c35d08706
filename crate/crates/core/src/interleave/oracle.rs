//! Exhaustive interleaving search for tiny trees.
//!
//! With exact raises a map is determined by its leaf images, and every leaf
//! image lies among the finitely many points at the target height. The
//! search enumerates consistent leaf assignments for both maps and checks
//! the round-trip identities at every node.

use crate::error::{Error, Result};
use crate::interleave::candidates::candidate_values;
use crate::merge_tree::{MergePoint, MergeTree};
use crate::rational::Rational;

/// All exact-raise maps `src -> dst`, as node image lists.
fn exact_maps(src: &MergeTree, dst: &MergeTree, eps: &Rational) -> Vec<Vec<MergePoint>> {
    let leaves = src.leaves();
    let options: Vec<Vec<MergePoint>> = leaves
        .iter()
        .map(|&l| dst.points_at_height(&(src.height(l) + eps)))
        .collect();
    if options.iter().any(|o| o.is_empty()) {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut pick = vec![0usize; leaves.len()];
    loop {
        let mut images: Vec<Option<MergePoint>> = vec![None; src.node_count()];
        let mut ok = true;
        'leaves: for (k, &l) in leaves.iter().enumerate() {
            let base = &options[k][pick[k]];
            let mut v = Some(l);
            while let Some(u) = v {
                let want = dst
                    .ancestor_at(base, &(src.height(u) + eps))
                    .expect("ancestors exist upward");
                match &images[u] {
                    Some(have) if *have == want => break,
                    Some(_) => {
                        ok = false;
                        break 'leaves;
                    }
                    None => images[u] = Some(want),
                }
                v = src.parent(u);
            }
        }
        if ok {
            out.push(images.into_iter().map(|p| p.expect("every node is above a leaf")).collect());
        }
        // odometer
        let mut k = 0;
        loop {
            if k == pick.len() {
                return out;
            }
            pick[k] += 1;
            if pick[k] < options[k].len() {
                break;
            }
            pick[k] = 0;
            k += 1;
        }
    }
}

fn apply(src: &MergeTree, dst: &MergeTree, images: &[MergePoint], p: &MergePoint) -> MergePoint {
    let c = src.lower_node(p);
    dst.ancestor_at(&images[c], &(src.point_height(p) + dst.point_height(&images[c]) - src.height(c)))
        .expect("upward")
}

fn round_trips(src: &MergeTree, dst: &MergeTree, there: &[MergePoint], back: &[MergePoint], eps2: &Rational) -> bool {
    (0..src.node_count()).all(|v| {
        let x = apply(dst, src, back, &there[v]);
        x == src.shift(&MergePoint::node(v), eps2)
    })
}

/// Whether exact `eps`-compatible maps exist, by exhaustive search.
pub fn interleaving_feasible(
    mf: &MergeTree,
    mg: &MergeTree,
    eps: &Rational,
    max_leaves: usize,
) -> Result<bool> {
    guard(mf, mg, max_leaves)?;
    if eps.is_negative() {
        return Err(Error::InvalidArgument(format!("eps must be non-negative, got {eps}")));
    }
    let eps2 = eps.mul_int(2);
    let alphas = exact_maps(mf, mg, eps);
    if alphas.is_empty() {
        return Ok(false);
    }
    let betas = exact_maps(mg, mf, eps);
    // cheap filter: alpha(beta(leaf)) must be the 2 eps shift of every leaf
    let g_leaves = mg.leaves();
    for a in &alphas {
        for b in &betas {
            let leaf_ok = g_leaves.iter().all(|&w| {
                apply(mf, mg, a, &b[w]) == mg.shift(&MergePoint::node(w), &eps2)
            });
            if leaf_ok && round_trips(mf, mg, a, b, &eps2) && round_trips(mg, mf, b, a, &eps2) {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Least candidate value admitting compatible maps.
pub fn interleaving_bruteforce(mf: &MergeTree, mg: &MergeTree, max_leaves: usize) -> Result<Rational> {
    guard(mf, mg, max_leaves)?;
    for eps in candidate_values(mf, mg).values {
        if interleaving_feasible(mf, mg, &eps, max_leaves)? {
            return Ok(eps);
        }
    }
    Err(Error::Precondition(
        "no candidate value admits compatible maps".into(),
    ))
}

fn guard(mf: &MergeTree, mg: &MergeTree, max_leaves: usize) -> Result<()> {
    let (a, b) = (mf.leaves().len(), mg.leaves().len());
    if a > max_leaves || b > max_leaves {
        return Err(Error::SizeGuard(format!(
            "interleaving oracle limited to {max_leaves} leaves per tree, got {a} and {b}"
        )));
    }
    Ok(())
}
