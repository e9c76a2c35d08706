//! Interleaving distance between merge trees: candidate values, an exact
//! decider for long edges, an approximate decider for short edges, binary
//! search, map verification and a brute-force oracle.

pub mod candidates;
pub mod long;
pub mod maps;
pub mod matching;
pub mod oracle;
pub mod search;
pub mod short;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::merge_tree::{MergeTree, Suppressed};
use crate::rational::Rational;

pub use candidates::{candidate_values, CandidateSet};
pub use long::{all_edges_long, decide_long};
pub use maps::{maps_to_text, naive_maps, parse_maps, verify_compatible, verify_report, TreeMap, VerifyReport};
pub use matching::{hopcroft_karp, Matching};
pub use oracle::{interleaving_bruteforce, interleaving_feasible};
pub use search::{interleaving_distance, Interleaving, Probe, Termination};
pub use short::{decide_short, ShortPlan};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Route {
    /// Exact long-edge decider; certified equals `eps`.
    Long,
    Short(ShortPlan),
    /// Construction failed verification and the naive maps were used.
    Naive,
}

#[derive(Clone, Debug)]
pub struct DecisionOutcome {
    pub eps: Rational,
    /// Maps on YES, `None` on NO.
    pub maps: Option<(TreeMap, TreeMap)>,
    /// The value at which `maps` pass verification; set exactly on YES.
    pub certified: Option<Rational>,
    pub route: Route,
    /// Multiplier `c` with `certified <= c * eps` promised by the route.
    pub factor: u64,
}

impl DecisionOutcome {
    pub fn is_yes(&self) -> bool {
        self.maps.is_some()
    }
}

/// Two merge trees together with their degree-two suppressions, so repeated
/// decisions share the preprocessing.
pub struct Prepared<'a> {
    pub mf: &'a MergeTree,
    pub mg: &'a MergeTree,
    pub sf: Suppressed,
    pub sg: Suppressed,
}

impl<'a> Prepared<'a> {
    pub fn new(mf: &'a MergeTree, mg: &'a MergeTree) -> Self {
        Prepared {
            mf,
            mg,
            sf: mf.suppress_degree_two(),
            sg: mg.suppress_degree_two(),
        }
    }

    pub fn node_total(&self) -> usize {
        self.sf.tree.node_count() + self.sg.tree.node_count()
    }

    pub fn decide(&self, eps: &Rational) -> Result<DecisionOutcome> {
        if eps.is_negative() {
            return Err(Error::InvalidArgument(format!("eps must be non-negative, got {eps}")));
        }
        let (sf, sg) = (&self.sf.tree, &self.sg.tree);
        let long = eps.is_zero() || (long::all_edges_long(sf, eps) && long::all_edges_long(sg, eps));
        let (maps, certified, route, factor) = if long {
            (decide_long(sf, sg, eps)?, eps.clone(), Route::Long, 1)
        } else {
            let out = decide_short(sf, sg, eps)?;
            let factor = out.factor();
            (out.maps, out.certified, Route::Short(out.plan), factor)
        };
        let Some((a, b)) = maps else {
            return Ok(DecisionOutcome {
                eps: eps.clone(),
                maps: None,
                certified: None,
                route,
                factor,
            });
        };
        let lifted = a
            .stretched(sf, sg, &certified)
            .zip(b.stretched(sg, sf, &certified))
            .map(|(a, b)| {
                (
                    a.lift(&self.sf, self.mf, &self.sg, self.mg),
                    b.lift(&self.sg, self.mg, &self.sf, self.mf),
                )
            })
            .filter(|(a, b)| verify_compatible(self.mf, self.mg, a, b, &certified).unwrap_or(false));
        Ok(match lifted {
            Some(maps) => DecisionOutcome {
                eps: eps.clone(),
                maps: Some(maps),
                certified: Some(certified),
                route,
                factor,
            },
            None => {
                let (a, b, span) = naive_maps(self.mf, self.mg);
                DecisionOutcome {
                    eps: eps.clone(),
                    maps: Some((a, b)),
                    certified: Some(span),
                    route: Route::Naive,
                    factor,
                }
            }
        })
    }
}

/// One decision step: is `d_I(mf, mg) <= eps`? NO is always correct.
pub fn decide(mf: &MergeTree, mg: &MergeTree, eps: &Rational) -> Result<DecisionOutcome> {
    Prepared::new(mf, mg).decide(eps)
}
