//! Finite representation and verification of maps between merge trees.
//!
//! A [`TreeMap`] stores the image of every source node. The image of an
//! interior point on the edge above node `c` is the image of `c` shifted up
//! by the height difference. Under that rule a map has a constant height
//! raise along each edge, so verification first stretches every node image
//! up to the full raise `eps`; after stretching, checking nodes is enough.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::merge_tree::{MergePoint, MergeTree, Suppressed, Trimmed};
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TreeMap {
    pub images: Vec<MergePoint>,
}

impl TreeMap {
    pub fn new(images: Vec<MergePoint>) -> Self {
        TreeMap { images }
    }

    pub fn identity(m: &MergeTree) -> Self {
        TreeMap {
            images: (0..m.node_count()).map(MergePoint::node).collect(),
        }
    }

    /// Checks that the map has one valid image per source node.
    pub fn validate(&self, src: &MergeTree, dst: &MergeTree) -> Result<()> {
        if self.images.len() != src.node_count() {
            return Err(Error::InvalidArgument(format!(
                "map lists {} images for a tree with {} nodes",
                self.images.len(),
                src.node_count()
            )));
        }
        for p in &self.images {
            dst.validate_point(p)?;
        }
        Ok(())
    }

    /// Height raise `g(image(v)) - f(v)` at node `v`.
    pub fn raise(&self, src: &MergeTree, dst: &MergeTree, v: usize) -> Rational {
        dst.point_height(&self.images[v]) - src.height(v)
    }

    /// Image of an arbitrary source point under the shift extension.
    pub fn apply(&self, src: &MergeTree, dst: &MergeTree, p: &MergePoint) -> MergePoint {
        let c = src.lower_node(p);
        dst.shift(&self.images[c], &(src.point_height(p) - src.height(c)))
    }

    /// Every node image raised to exactly `f(v) + eps`; `None` if some raise
    /// is negative or exceeds `eps`.
    pub fn stretched(&self, src: &MergeTree, dst: &MergeTree, eps: &Rational) -> Option<TreeMap> {
        let mut images = Vec::with_capacity(self.images.len());
        for (v, img) in self.images.iter().enumerate() {
            let target = src.height(v) + eps;
            let h = dst.point_height(img);
            if *h < *src.height(v) || *h > target {
                return None;
            }
            images.push(dst.ancestor_at(img, &target)?);
        }
        Some(TreeMap { images })
    }

    /// Transports a map between suppressed trees back to their sources.
    pub fn lift(&self, from: &Suppressed, src: &MergeTree, to: &Suppressed, dst: &MergeTree) -> TreeMap {
        let images = (0..src.node_count())
            .map(|v| {
                let img = self.apply(&from.tree, &to.tree, &from.position[v]);
                to.to_source(dst, &img)
            })
            .collect();
        TreeMap { images }
    }

    /// Extends a map between trimmed trees to their sources: removed nodes
    /// take the image of their lowest surviving ancestor.
    pub fn untrim(&self, from: &Trimmed, to: &Trimmed, dst: &MergeTree) -> TreeMap {
        let images = from
            .anchor_of
            .iter()
            .map(|&w| to.to_source(dst, &self.images[w]))
            .collect();
        TreeMap { images }
    }
}

fn point_text(p: &MergePoint) -> String {
    match p {
        MergePoint::Node { id } => format!("node {id}"),
        MergePoint::Edge { child, height } => format!("edge {child} {height}"),
        MergePoint::AboveRoot { height } => format!("ray {height}"),
    }
}

/// Text form of a map pair: an `alpha N` section then a `beta N` section,
/// each with one `v node id | v edge child height | v ray height` line per
/// source node in id order. `#` starts a comment.
pub fn maps_to_text(alpha: &TreeMap, beta: &TreeMap) -> String {
    let mut out = String::new();
    for (name, map) in [("alpha", alpha), ("beta", beta)] {
        out.push_str(&format!("{name} {}\n", map.images.len()));
        for (v, p) in map.images.iter().enumerate() {
            out.push_str(&format!("{v} {}\n", point_text(p)));
        }
    }
    out
}

pub fn parse_maps(text: &str) -> Result<(TreeMap, TreeMap)> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let mut section = |name: &str| -> Result<TreeMap> {
        let (ln, head) = lines.next().ok_or_else(|| Error::Parse(format!("missing `{name}` section")))?;
        let bad = |message: String| Error::Malformed { line: ln, message };
        let count: usize = match head.split_whitespace().collect::<Vec<_>>()[..] {
            [n, c] if n == name => c.parse().map_err(|_| bad(format!("invalid count `{c}`")))?,
            _ => return Err(bad(format!("expected `{name} <count>`"))),
        };
        let mut images = Vec::with_capacity(count);
        for v in 0..count {
            let (ln, line) = lines
                .next()
                .ok_or_else(|| Error::Parse(format!("`{name}` lists fewer than {count} images")))?;
            let bad = |message: String| Error::Malformed { line: ln, message };
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks.first().and_then(|t| t.parse::<usize>().ok()) != Some(v) {
                return Err(bad(format!("expected image of node {v}")));
            }
            let id = |t: &str| t.parse::<usize>().map_err(|_| bad(format!("invalid node id `{t}`")));
            let h = |t: &str| t.parse::<Rational>().map_err(|e| bad(e.to_string()));
            images.push(match toks[1..] {
                ["node", a] => MergePoint::node(id(a)?),
                ["edge", c, x] => MergePoint::Edge {
                    child: id(c)?,
                    height: h(x)?,
                },
                ["ray", x] => MergePoint::AboveRoot { height: h(x)? },
                _ => return Err(bad(format!("unrecognized image `{line}`"))),
            });
        }
        Ok(TreeMap { images })
    };
    let alpha = section("alpha")?;
    let beta = section("beta")?;
    if let Some((ln, _)) = lines.next() {
        return Err(Error::Malformed {
            line: ln,
            message: "trailing content after `beta` section".into(),
        });
    }
    Ok((alpha, beta))
}

/// Outcome of each relaxed compatibility condition.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    /// `f(v) <= g(alpha(v)) <= f(v) + eps` at every node.
    pub alpha_heights: bool,
    pub beta_heights: bool,
    /// `alpha(parent)` is an ancestor-or-equal of `alpha(child)`.
    pub alpha_ancestors: bool,
    pub beta_ancestors: bool,
    /// After stretching, `beta(alpha(v))` is an ancestor-or-equal of `v`.
    pub beta_after_alpha: bool,
    pub alpha_after_beta: bool,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.alpha_heights
            && self.beta_heights
            && self.alpha_ancestors
            && self.beta_ancestors
            && self.beta_after_alpha
            && self.alpha_after_beta
    }

    pub fn conditions(&self) -> [(&'static str, bool); 6] {
        [
            ("alpha_heights", self.alpha_heights),
            ("beta_heights", self.beta_heights),
            ("alpha_ancestors", self.alpha_ancestors),
            ("beta_ancestors", self.beta_ancestors),
            ("beta_after_alpha", self.beta_after_alpha),
            ("alpha_after_beta", self.alpha_after_beta),
        ]
    }
}

fn heights_ok(src: &MergeTree, dst: &MergeTree, map: &TreeMap, eps: &Rational) -> bool {
    (0..src.node_count()).all(|v| {
        let r = map.raise(src, dst, v);
        !r.is_negative() && r <= *eps
    })
}

fn ancestors_ok(src: &MergeTree, dst: &MergeTree, map: &TreeMap) -> bool {
    (0..src.node_count()).all(|v| match src.parent(v) {
        Some(p) => dst.is_ancestor_or_equal(&map.images[p], &map.images[v]),
        None => true,
    })
}

fn round_trip_ok(
    src: &MergeTree,
    dst: &MergeTree,
    there: &TreeMap,
    back: &TreeMap,
) -> bool {
    (0..src.node_count()).all(|v| {
        let y = &there.images[v];
        let x = back.apply(dst, src, y);
        src.is_ancestor_or_equal(&x, &MergePoint::node(v))
    })
}

/// Per-condition check of the relaxed `eps`-compatibility conditions.
pub fn verify_report(
    mf: &MergeTree,
    mg: &MergeTree,
    alpha: &TreeMap,
    beta: &TreeMap,
    eps: &Rational,
) -> Result<VerifyReport> {
    if eps.is_negative() {
        return Err(Error::InvalidArgument(format!("eps must be non-negative, got {eps}")));
    }
    alpha.validate(mf, mg)?;
    beta.validate(mg, mf)?;
    let mut report = VerifyReport {
        alpha_heights: heights_ok(mf, mg, alpha, eps),
        beta_heights: heights_ok(mg, mf, beta, eps),
        alpha_ancestors: ancestors_ok(mf, mg, alpha),
        beta_ancestors: ancestors_ok(mg, mf, beta),
        ..VerifyReport::default()
    };
    if let (Some(a), Some(b)) = (alpha.stretched(mf, mg, eps), beta.stretched(mg, mf, eps)) {
        report.beta_after_alpha = round_trip_ok(mf, mg, &a, &b);
        report.alpha_after_beta = round_trip_ok(mg, mf, &b, &a);
    }
    Ok(report)
}

pub fn verify_compatible(
    mf: &MergeTree,
    mg: &MergeTree,
    alpha: &TreeMap,
    beta: &TreeMap,
    eps: &Rational,
) -> Result<bool> {
    Ok(verify_report(mf, mg, alpha, beta, eps)?.passed())
}

/// Sends everything onto the other tree's infinite edge: the lowest leaf of
/// either tree goes to the height of the higher root. Always compatible at
/// the returned height span.
pub fn naive_maps(mf: &MergeTree, mg: &MergeTree) -> (TreeMap, TreeMap, Rational) {
    let top = mf.height(mf.root()).clone().max(mg.height(mg.root()).clone());
    let bottom = mf.floor(mf.root()).clone().min(mg.floor(mg.root()).clone());
    let span = top - bottom;
    let onto = |src: &MergeTree, dst: &MergeTree| TreeMap {
        images: (0..src.node_count())
            .map(|v| dst.shift(&MergePoint::node(dst.root()), &(src.height(v) + &span - dst.height(dst.root()))))
            .collect(),
    };
    (onto(mf, mg), onto(mg, mf), span)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testing::arb_merge_tree;
    use proptest::prelude::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    // root -3, leaves -4 (1), -5 (2)
    fn three() -> MergeTree {
        MergeTree::new(vec![q("-3"), q("-4"), q("-5")], vec![None, Some(0), Some(0)]).unwrap()
    }

    #[test]
    fn identity_is_zero_compatible() {
        let m = three();
        let id = TreeMap::identity(&m);
        let r = verify_report(&m, &m, &id, &id, &q("0")).unwrap();
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn sibling_swap_fails_round_trip() {
        // root 0, leaves -4 (1), -5 (2)
        let m = MergeTree::new(vec![q("0"), q("-4"), q("-5")], vec![None, Some(0), Some(0)]).unwrap();
        let id = TreeMap::identity(&m);
        // leaf 1 sent to a point on the edge above its sibling
        let mut bad = id.clone();
        bad.images[1] = MergePoint::Edge {
            child: 2,
            height: q("-4"),
        };
        let r = verify_report(&m, &m, &bad, &id, &q("1")).unwrap();
        assert!(r.alpha_heights && r.alpha_ancestors);
        assert!(!r.beta_after_alpha);
        assert!(!r.passed());
    }

    #[test]
    fn height_violations_are_reported() {
        let m = three();
        let id = TreeMap::identity(&m);
        let mut low = id.clone();
        low.images[0] = MergePoint::node(1);
        let r = verify_report(&m, &m, &low, &id, &q("1")).unwrap();
        assert!(!r.alpha_heights);
        assert!(r.beta_heights);
        assert!(verify_report(&m, &m, &id, &id, &q("-1")).is_err());
        let short = TreeMap::new(vec![MergePoint::node(0)]);
        assert!(verify_report(&m, &m, &short, &id, &q("1")).is_err());
    }

    #[test]
    fn naive_maps_pass_at_span() {
        let f = three();
        let g = MergeTree::single(q("2"));
        let (a, b, span) = naive_maps(&f, &g);
        assert_eq!(span, q("7"));
        assert!(verify_compatible(&f, &g, &a, &b, &span).unwrap());
        assert!(!verify_compatible(&f, &g, &a, &b, &q("6")).unwrap());
    }

    #[test]
    fn maps_text_round_trip() {
        let a = TreeMap::new(vec![
            MergePoint::node(0),
            MergePoint::Edge {
                child: 2,
                height: q("-9/2"),
            },
            MergePoint::AboveRoot { height: q("1") },
        ]);
        let b = TreeMap::identity(&three());
        let text = maps_to_text(&a, &b);
        assert_eq!(parse_maps(&text).unwrap(), (a, b));
        assert!(parse_maps("alpha 1\n0 node 0\n").is_err());
        assert!(parse_maps("alpha 1\n1 node 0\nbeta 0\n").is_err());
        assert!(parse_maps("alpha 1\n0 leaf 0\nbeta 0\n").is_err());
        assert!(parse_maps("alpha 0\nbeta 0\nextra\n").is_err());
    }

    proptest! {
        #[test]
        fn naive_maps_always_verify(f in arb_merge_tree(8), g in arb_merge_tree(8)) {
            let (a, b, span) = naive_maps(&f, &g);
            prop_assert!(verify_compatible(&f, &g, &a, &b, &span).unwrap());
        }

        #[test]
        fn suppression_lift_of_identity(m in arb_merge_tree(10), c in 0i64..6) {
            let s = m.suppress_degree_two();
            let eps = Rational::new(c, 2);
            let shifted = TreeMap::new(
                (0..s.tree.node_count()).map(|v| s.tree.shift(&MergePoint::node(v), &eps)).collect(),
            );
            let lifted = shifted.lift(&s, &m, &s, &m);
            prop_assert!(verify_compatible(&m, &m, &lifted, &lifted, &eps).unwrap());
        }
    }
}
