//! Binary search for the interleaving distance over the candidate set.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::interleave::candidates::candidate_values;
use crate::interleave::maps::{naive_maps, TreeMap};
use crate::interleave::{DecisionOutcome, Prepared, Route};
use crate::merge_tree::MergeTree;
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Termination {
    /// NO at a candidate and YES at the next one.
    Consecutive,
    /// YES at a lower candidate whose maps certify only above a NO.
    EarlierYes,
}

#[derive(Clone, Debug, Serialize)]
pub struct Probe {
    pub eps: Rational,
    pub yes: bool,
    pub certified: Option<Rational>,
    pub route: Route,
    pub factor: u64,
}

#[derive(Clone, Debug)]
pub struct Interleaving {
    /// Accepted candidate; a lower bound on the distance under termination
    /// by consecutive candidates.
    pub value: Rational,
    /// Verified compatibility value of `alpha`, `beta`; an upper bound. The
    /// smallest over every YES probe and the naive maps.
    pub certified: Rational,
    pub alpha: TreeMap,
    pub beta: TreeMap,
    /// Largest route factor over all probes.
    pub factor: u64,
    pub termination: Termination,
    pub probes: Vec<Probe>,
    pub candidate_count: usize,
}

fn record(probes: &mut Vec<Probe>, o: &DecisionOutcome) {
    probes.push(Probe {
        eps: o.eps.clone(),
        yes: o.is_yes(),
        certified: o.certified.clone(),
        route: o.route.clone(),
        factor: o.factor,
    });
}

// a YES below `eps` whose certificate lies above it
fn earlier_yes(probes: &[Probe], eps: &Rational) -> Option<usize> {
    probes
        .iter()
        .enumerate()
        .filter(|(_, p)| p.yes && p.eps < *eps && p.certified.as_ref().is_some_and(|c| c > eps))
        .min_by(|a, b| a.1.eps.cmp(&b.1.eps))
        .map(|(i, _)| i)
}

pub fn interleaving_distance(mf: &MergeTree, mg: &MergeTree) -> Result<Interleaving> {
    let prep = Prepared::new(mf, mg);
    let lambda = candidate_values(&prep.sf.tree, &prep.sg.tree).values;
    let mut probes = Vec::new();
    let mut outcomes: Vec<DecisionOutcome> = Vec::new();

    let (mut lo, mut hi) = (0usize, lambda.len() - 1);
    let top = prep.decide(&lambda[hi])?;
    record(&mut probes, &top);
    if !top.is_yes() {
        return Err(Error::Precondition(
            "decider rejected the largest candidate value".into(),
        ));
    }
    let mut best = top;
    let mut termination = Termination::Consecutive;
    while lo < hi {
        let mid = (lo + hi) / 2;
        let o = prep.decide(&lambda[mid])?;
        record(&mut probes, &o);
        if o.is_yes() {
            hi = mid;
            outcomes.push(std::mem::replace(&mut best, o));
        } else {
            lo = mid + 1;
            if let Some(i) = earlier_yes(&probes, &lambda[mid]) {
                let eps = probes[i].eps.clone();
                if let Some(pos) = outcomes.iter().position(|o| o.eps == eps) {
                    best = outcomes.swap_remove(pos);
                }
                termination = Termination::EarlierYes;
                break;
            }
        }
    }
    let factor = probes.iter().map(|p| p.factor).max().unwrap_or(1);
    let value = best.eps.clone();
    // any verified pair bounds the distance; keep the tightest
    let mut certified = best.certified.clone().expect("YES carries certificate");
    let (mut alpha, mut beta) = best.maps.expect("accepted outcome is YES");
    for o in outcomes {
        if let (Some(c), Some(maps)) = (o.certified, o.maps) {
            if c < certified {
                certified = c;
                (alpha, beta) = maps;
            }
        }
    }
    let (na, nb, span) = naive_maps(mf, mg);
    if span < certified {
        certified = span;
        (alpha, beta) = (na, nb);
    }
    Ok(Interleaving {
        value,
        certified,
        alpha,
        beta,
        factor,
        termination,
        probes,
        candidate_count: lambda.len(),
    })
}
