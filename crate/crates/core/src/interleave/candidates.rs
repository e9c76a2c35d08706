//! The finite set of values that can be an interleaving distance.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::merge_tree::MergeTree;
use crate::rational::Rational;

/// Sorted, deduplicated candidate distances.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CandidateSet {
    pub values: Vec<Rational>,
}

impl CandidateSet {
    pub fn contains(&self, x: &Rational) -> bool {
        self.values.binary_search(x).is_ok()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

fn distinct_heights(m: &MergeTree) -> Vec<Rational> {
    let set: BTreeSet<&Rational> = m.heights().iter().collect();
    set.into_iter().cloned().collect()
}

/// Half the height gaps within each tree, and full gaps across the trees.
pub fn candidate_values(mf: &MergeTree, mg: &MergeTree) -> CandidateSet {
    let hf = distinct_heights(mf);
    let hg = distinct_heights(mg);
    let mut out = BTreeSet::new();
    for hs in [&hf, &hg] {
        for (i, a) in hs.iter().enumerate() {
            for b in &hs[i..] {
                out.insert((b - a).half());
            }
        }
    }
    for a in &hf {
        for b in &hg {
            out.insert((a - b).abs());
        }
    }
    CandidateSet {
        values: out.into_iter().collect(),
    }
}
