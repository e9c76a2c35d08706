//! Gromov-Hausdorff bounds for metric trees from interleaving distances of
//! rooted merge trees.
//!
//! For roots `u`, `v`, the merge trees of `-d(u, .)` and `-d(v, .)` have
//! interleaving distance at least half the GH distance, and for a diameter
//! endpoint `s` of the first tree some `v` brings it within 14 times the GH
//! distance.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::interleave::{interleaving_distance, Interleaving};
use crate::merge_tree::{build_merge_tree, MergeTree};
use crate::metric_tree::MetricTree;
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GhMode {
    /// Every pair of roots.
    AllPairs,
    /// First root fixed at a diameter endpoint.
    Diameter,
}

impl FromStr for GhMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" | "all-pairs" | "all_pairs" => Ok(GhMode::AllPairs),
            "diameter" => Ok(GhMode::Diameter),
            _ => Err(Error::InvalidArgument(format!("unknown mode `{s}`"))),
        }
    }
}

impl fmt::Display for GhMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GhMode::AllPairs => "all",
            GhMode::Diameter => "diameter",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GhEstimate {
    /// Smallest accepted search value over root pairs.
    pub delta_hat: Rational,
    /// Smallest verified map bound over root pairs.
    pub certified: Rational,
    pub lower_bound: Rational,
    pub upper_bound: Rational,
    pub best_pair: (usize, usize),
    pub mode: GhMode,
    /// Largest decider factor over every probe of every pair.
    pub c_factor: u64,
    pub pairs_evaluated: usize,
}

/// `(certified / (14 c), 2 certified)`.
pub fn gh_bounds_from_certified(certified: &Rational, c_factor: u64) -> Result<(Rational, Rational)> {
    if certified.is_negative() {
        return Err(Error::InvalidArgument(format!(
            "certified value must be non-negative, got {certified}"
        )));
    }
    if c_factor == 0 {
        return Err(Error::InvalidArgument("approximation factor must be at least 1".into()));
    }
    let lower = certified / Rational::from_integer(14 * c_factor as i64);
    Ok((lower, certified.mul_int(2)))
}

struct PairResult {
    u: usize,
    v: usize,
    run: Interleaving,
}

pub fn approx_gh(t1: &MetricTree, t2: &MetricTree, mode: GhMode) -> Result<GhEstimate> {
    let firsts: Vec<usize> = match mode {
        GhMode::AllPairs => (0..t1.node_count()).collect(),
        GhMode::Diameter => vec![t1.diameter_endpoint()],
    };
    let left: Vec<(usize, MergeTree)> = firsts
        .iter()
        .map(|&u| Ok((u, build_merge_tree(t1, u)?)))
        .collect::<Result<_>>()?;
    let right: Vec<MergeTree> = (0..t2.node_count())
        .map(|v| build_merge_tree(t2, v))
        .collect::<Result<_>>()?;
    let jobs: Vec<(usize, usize)> = (0..left.len())
        .flat_map(|i| (0..right.len()).map(move |v| (i, v)))
        .collect();
    let results: Vec<PairResult> = jobs
        .par_iter()
        .map(|&(i, v)| {
            let (u, ref mu) = left[i];
            interleaving_distance(mu, &right[v]).map(|run| PairResult { u, v, run })
        })
        .collect::<Result<_>>()?;

    let best = results
        .iter()
        .min_by(|a, b| {
            (&a.run.certified, &a.run.value, a.u, a.v).cmp(&(&b.run.certified, &b.run.value, b.u, b.v))
        })
        .expect("trees are nonempty");
    let delta_hat = results
        .iter()
        .map(|r| r.run.value.clone())
        .min()
        .expect("nonempty");
    let c_factor = results.iter().map(|r| r.run.factor).max().unwrap_or(1);
    let certified = best.run.certified.clone();
    let (lower_bound, upper_bound) = gh_bounds_from_certified(&certified, c_factor)?;
    Ok(GhEstimate {
        delta_hat,
        certified,
        lower_bound,
        upper_bound,
        best_pair: (best.u, best.v),
        mode,
        c_factor,
        pairs_evaluated: results.len(),
    })
}
