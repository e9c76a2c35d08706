//! Rooted merge trees with an implicit infinite edge above the root.
//!
//! Heights strictly decrease from parent to child. Points of the tree are
//! [`MergePoint`]s; interior points of edges are computed on demand and never
//! stored.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::metric_tree::MetricTree;
use crate::rational::Rational;

/// A location in a merge tree.
///
/// `Edge` lies strictly between `child` and its parent; `AboveRoot` lies
/// strictly above the root. Points that coincide with a node use `Node`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MergePoint {
    Node { id: usize },
    Edge { child: usize, height: Rational },
    AboveRoot { height: Rational },
}

impl MergePoint {
    pub fn node(id: usize) -> Self {
        MergePoint::Node { id }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeLengthStats {
    pub min_length: Rational,
    pub max_length: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MergeTree {
    heights: Vec<Rational>,
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    root: usize,
    // jump[k][v] = 2^k-th ancestor of v, saturating at the root
    jump: Vec<Vec<usize>>,
    // minimum height in the subtree of each node
    floor: Vec<Rational>,
    // nodes ordered root first, parents before children
    order: Vec<usize>,
}

impl MergeTree {
    pub fn new(heights: Vec<Rational>, parent: Vec<Option<usize>>) -> Result<Self> {
        let n = heights.len();
        if n == 0 {
            return Err(Error::InvalidTree("a merge tree needs at least one node".into()));
        }
        if parent.len() != n {
            return Err(Error::InvalidTree("parent and height lists differ in length".into()));
        }
        let roots: Vec<usize> = (0..n).filter(|&v| parent[v].is_none()).collect();
        if roots.len() != 1 {
            return Err(Error::InvalidTree(format!(
                "expected exactly one root, found {}",
                roots.len()
            )));
        }
        let root = roots[0];
        let mut children = vec![Vec::new(); n];
        for (v, p) in parent.iter().enumerate() {
            if let Some(p) = *p {
                if p >= n {
                    return Err(Error::InvalidTree(format!("node {v} has unknown parent {p}")));
                }
                if heights[v] >= heights[p] {
                    return Err(Error::InvalidTree(format!(
                        "node {v} at height {} is not below its parent {p} at {}",
                        heights[v], heights[p]
                    )));
                }
                children[p].push(v);
            }
        }
        let mut order = Vec::with_capacity(n);
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            queue.extend(children[v].iter().copied());
        }
        if order.len() != n {
            return Err(Error::InvalidTree("parent structure has a cycle".into()));
        }
        let mut floor = heights.clone();
        for &v in order.iter().rev() {
            if let Some(p) = parent[v] {
                if floor[v] < floor[p] {
                    floor[p] = floor[v].clone();
                }
            }
        }
        let mut jump = vec![(0..n).map(|v| parent[v].unwrap_or(v)).collect::<Vec<_>>()];
        let mut span = 1usize;
        while span < n {
            let prev = jump.last().expect("nonempty");
            let next = (0..n).map(|v| prev[prev[v]]).collect();
            jump.push(next);
            span *= 2;
        }
        Ok(MergeTree {
            heights,
            parent,
            children,
            root,
            jump,
            floor,
            order,
        })
    }

    pub fn single(height: Rational) -> Self {
        MergeTree::new(vec![height], vec![None]).expect("single node is valid")
    }

    pub fn node_count(&self) -> usize {
        self.heights.len()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn height(&self, v: usize) -> &Rational {
        &self.heights[v]
    }

    pub fn heights(&self) -> &[Rational] {
        &self.heights
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        self.children[v].is_empty()
    }

    pub fn leaves(&self) -> Vec<usize> {
        (0..self.node_count()).filter(|&v| self.is_leaf(v)).collect()
    }

    /// Parents before children.
    pub fn top_down(&self) -> &[usize] {
        &self.order
    }

    /// Minimum height among the descendants of `v`, including `v`.
    pub fn floor(&self, v: usize) -> &Rational {
        &self.floor[v]
    }

    pub fn edge_lengths(&self) -> Option<EdgeLengthStats> {
        let mut lengths = (0..self.node_count())
            .filter_map(|v| self.parent[v].map(|p| &self.heights[p] - &self.heights[v]));
        let first = lengths.next()?;
        let (min_length, max_length) = lengths.fold((first.clone(), first), |(lo, hi), l| {
            (lo.min(l.clone()), hi.max(l))
        });
        Some(EdgeLengthStats {
            min_length,
            max_length,
        })
    }

    /// A copy with every height increased by `c`.
    pub fn raised(&self, c: &Rational) -> MergeTree {
        let heights = self.heights.iter().map(|h| h + c).collect();
        MergeTree::new(heights, self.parent.clone()).expect("raising preserves validity")
    }

    /// A copy with every height multiplied by `k > 0`.
    pub fn scaled(&self, k: &Rational) -> MergeTree {
        assert!(k.is_positive(), "scale factor must be positive");
        let heights = self.heights.iter().map(|h| h * k).collect();
        MergeTree::new(heights, self.parent.clone()).expect("scaling preserves validity")
    }

    pub fn point_height<'a>(&'a self, p: &'a MergePoint) -> &'a Rational {
        match p {
            MergePoint::Node { id } => &self.heights[*id],
            MergePoint::Edge { height, .. } | MergePoint::AboveRoot { height } => height,
        }
    }

    pub fn validate_point(&self, p: &MergePoint) -> Result<()> {
        let ok = match p {
            MergePoint::Node { id } => *id < self.node_count(),
            MergePoint::Edge { child, height } => {
                *child < self.node_count()
                    && match self.parent[*child] {
                        Some(par) => self.heights[*child] < *height && *height < self.heights[par],
                        None => false,
                    }
            }
            MergePoint::AboveRoot { height } => *height > self.heights[self.root],
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidPoint(format!("{p:?} is not a point of this merge tree")))
        }
    }

    /// The highest node that is a descendant-or-self of `p`.
    pub fn lower_node(&self, p: &MergePoint) -> usize {
        match p {
            MergePoint::Node { id } => *id,
            MergePoint::Edge { child, .. } => *child,
            MergePoint::AboveRoot { .. } => self.root,
        }
    }

    /// The ancestor of node `v` at height `h >= height(v)`.
    fn node_ancestor_at(&self, v: usize, h: &Rational) -> MergePoint {
        debug_assert!(*h >= self.heights[v]);
        let mut u = v;
        for level in self.jump.iter().rev() {
            let w = level[u];
            if self.heights[w] <= *h {
                u = w;
            }
        }
        if self.heights[u] == *h {
            MergePoint::Node { id: u }
        } else {
            match self.parent[u] {
                Some(_) => MergePoint::Edge {
                    child: u,
                    height: h.clone(),
                },
                None => MergePoint::AboveRoot { height: h.clone() },
            }
        }
    }

    /// The ancestor of `p` at height `h`, or `None` if `h` is below `p`.
    pub fn ancestor_at(&self, p: &MergePoint, h: &Rational) -> Option<MergePoint> {
        if h < self.point_height(p) {
            return None;
        }
        Some(self.node_ancestor_at(self.lower_node(p), h))
    }

    /// The ancestor of `p` exactly `eps` higher.
    pub fn shift(&self, p: &MergePoint, eps: &Rational) -> MergePoint {
        assert!(!eps.is_negative(), "shift amount must be non-negative");
        let h = self.point_height(p) + eps;
        self.node_ancestor_at(self.lower_node(p), &h)
    }

    pub fn is_ancestor_or_equal(&self, a: &MergePoint, b: &MergePoint) -> bool {
        match self.ancestor_at(b, self.point_height(a)) {
            Some(x) => x == *a,
            None => false,
        }
    }

    /// Height of `p` minus the lowest height among its descendants.
    pub fn extent(&self, p: &MergePoint) -> Rational {
        self.point_height(p) - &self.floor[self.lower_node(p)]
    }

    /// All points at height exactly `h`, ordered by the id of their lower node.
    pub fn points_at_height(&self, h: &Rational) -> Vec<MergePoint> {
        let mut out = Vec::new();
        for v in 0..self.node_count() {
            let hv = &self.heights[v];
            if hv == h {
                out.push(MergePoint::Node { id: v });
            } else if hv < h {
                match self.parent[v] {
                    Some(p) if *h < self.heights[p] => out.push(MergePoint::Edge {
                        child: v,
                        height: h.clone(),
                    }),
                    None => out.push(MergePoint::AboveRoot { height: h.clone() }),
                    _ => {}
                }
            }
        }
        out
    }

    /// Descendants of `u` as a merge tree rooted at `u`, plus the source id of
    /// every new node.
    pub fn subtree(&self, u: usize) -> Result<(MergeTree, Vec<usize>)> {
        if u >= self.node_count() {
            return Err(Error::InvalidArgument(format!("no node {u}")));
        }
        let mut source = vec![u];
        let mut new_id = HashMap::from([(u, 0usize)]);
        let mut parent = vec![None];
        let mut i = 0;
        while i < source.len() {
            let v = source[i];
            for &c in &self.children[v] {
                new_id.insert(c, source.len());
                parent.push(Some(new_id[&v]));
                source.push(c);
            }
            i += 1;
        }
        let heights = source.iter().map(|&v| self.heights[v].clone()).collect();
        Ok((MergeTree::new(heights, parent)?, source))
    }

    /// Splices out every node with exactly one child, including a root with
    /// a single child. Heights of the remaining nodes and all leaf-pair merge
    /// heights are unchanged.
    pub fn suppress_degree_two(&self) -> Suppressed {
        let n = self.node_count();
        let keep: Vec<bool> = (0..n).map(|v| self.children[v].len() != 1).collect();
        let kept: Vec<usize> = (0..n).filter(|&v| keep[v]).collect();
        let mut new_id = vec![usize::MAX; n];
        for (i, &v) in kept.iter().enumerate() {
            new_id[v] = i;
        }
        // nearest kept proper ancestor, top-down
        let mut kept_above: Vec<Option<usize>> = vec![None; n];
        for &v in &self.order {
            if let Some(p) = self.parent[v] {
                kept_above[v] = if keep[p] { Some(p) } else { kept_above[p] };
            }
        }
        let heights = kept.iter().map(|&v| self.heights[v].clone()).collect();
        let parent = kept
            .iter()
            .map(|&v| kept_above[v].map(|p| new_id[p]))
            .collect();
        let tree = MergeTree::new(heights, parent).expect("suppression preserves validity");
        // highest kept descendant-or-self, bottom-up
        let mut kept_below = vec![usize::MAX; n];
        for &v in self.order.iter().rev() {
            kept_below[v] = if keep[v] {
                v
            } else {
                kept_below[self.children[v][0]]
            };
        }
        let position = (0..n)
            .map(|v| {
                let w = new_id[kept_below[v]];
                tree.node_ancestor_at(w, &self.heights[v])
            })
            .collect();
        Suppressed {
            tree,
            source: kept,
            position,
        }
    }

    /// Points with extent at least `tau`, with a new leaf at every cut.
    pub fn trim(&self, tau: &Rational) -> Trimmed {
        assert!(!tau.is_negative(), "trim threshold must be non-negative");
        let n = self.node_count();
        let survives = |v: usize| &self.heights[v] - &self.floor[v] >= *tau;
        if !survives(self.root) {
            let h = &self.floor[self.root] + tau;
            return Trimmed {
                tree: MergeTree::single(h.clone()),
                degenerate: true,
                origin: vec![self.node_ancestor_at(self.root, &h)],
                anchor_of: vec![0; n],
            };
        }
        let mut heights = Vec::new();
        let mut parent = Vec::new();
        let mut origin = Vec::new();
        let mut anchor_of = vec![usize::MAX; n];
        for &v in &self.order {
            let p = self.parent[v];
            if survives(v) {
                anchor_of[v] = heights.len();
                heights.push(self.heights[v].clone());
                parent.push(p.map(|p| anchor_of[p]));
                origin.push(MergePoint::Node { id: v });
                continue;
            }
            let p = p.expect("the root survives");
            if survives(p) {
                let cut = &self.floor[v] + tau;
                if cut < self.heights[p] {
                    anchor_of[v] = heights.len();
                    heights.push(cut.clone());
                    parent.push(Some(anchor_of[p]));
                    origin.push(MergePoint::Edge {
                        child: v,
                        height: cut,
                    });
                } else {
                    anchor_of[v] = anchor_of[p];
                }
            } else {
                anchor_of[v] = anchor_of[p];
            }
        }
        Trimmed {
            tree: MergeTree::new(heights, parent).expect("trimming preserves validity"),
            degenerate: false,
            origin,
            anchor_of,
        }
    }

    /// Order-independent structural fingerprint including heights.
    pub fn canonical_form(&self) -> String {
        let mut code = vec![String::new(); self.node_count()];
        for &v in self.order.iter().rev() {
            let mut parts: Vec<&str> = self.children[v].iter().map(|&c| code[c].as_str()).collect();
            parts.sort_unstable();
            let s = format!("({}{})", self.heights[v], parts.concat());
            code[v] = s;
        }
        std::mem::take(&mut code[self.root])
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (first_no, first) = lines
            .next()
            .ok_or_else(|| Error::Parse("empty merge-tree file".into()))?;
        let n: usize = first.parse().map_err(|_| Error::Malformed {
            line: first_no,
            message: format!("expected node count, got `{first}`"),
        })?;
        let mut heights: Vec<Option<Rational>> = vec![None; n];
        let mut parent = vec![None; n];
        let mut count = 0;
        for (no, line) in lines {
            let fields: Vec<&str> = line.split_whitespace().collect();
            let malformed = |message: String| Error::Malformed { line: no, message };
            if fields.len() != 3 {
                return Err(malformed(format!("expected `id height parent`, got `{line}`")));
            }
            let id: usize = fields[0]
                .parse()
                .map_err(|_| malformed(format!("invalid id `{}`", fields[0])))?;
            if id >= n {
                return Err(malformed(format!("id {id} out of range 0..{n}")));
            }
            if heights[id].is_some() {
                return Err(malformed(format!("duplicate id {id}")));
            }
            let h: Rational = fields[1]
                .parse()
                .map_err(|_| malformed(format!("invalid height `{}`", fields[1])))?;
            let p: i64 = fields[2]
                .parse()
                .map_err(|_| malformed(format!("invalid parent `{}`", fields[2])))?;
            parent[id] = match p {
                -1 => None,
                p if p >= 0 => Some(p as usize),
                _ => return Err(malformed(format!("invalid parent `{p}`"))),
            };
            heights[id] = Some(h);
            count += 1;
        }
        if count != n {
            return Err(Error::Parse(format!("expected {n} node lines, got {count}")));
        }
        let heights = heights.into_iter().map(|h| h.expect("all ids seen")).collect();
        MergeTree::new(heights, parent)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.node_count());
        for v in 0..self.node_count() {
            let p = self.parent[v].map_or(-1, |p| p as i64);
            let _ = writeln!(out, "{v} {} {p}", self.heights[v]);
        }
        out
    }
}

/// Output of [`MergeTree::suppress_degree_two`].
#[derive(Clone, Debug)]
pub struct Suppressed {
    pub tree: MergeTree,
    /// Source id of each node of `tree`.
    pub source: Vec<usize>,
    /// Location in `tree` of each source node.
    pub position: Vec<MergePoint>,
}

impl Suppressed {
    /// Carries a point of the suppressed tree back to the source tree.
    pub fn to_source(&self, source: &MergeTree, p: &MergePoint) -> MergePoint {
        let w = self.source[self.tree.lower_node(p)];
        source
            .ancestor_at(&MergePoint::node(w), self.tree.point_height(p))
            .expect("suppressed points sit above their lower node")
    }
}

/// Output of [`MergeTree::trim`].
#[derive(Clone, Debug)]
pub struct Trimmed {
    pub tree: MergeTree,
    /// Nothing but the infinite ray survived; `tree` is its lowest point.
    pub degenerate: bool,
    /// Location in the source tree of each node of `tree`.
    pub origin: Vec<MergePoint>,
    /// For each source node, the node of `tree` at its lowest surviving
    /// ancestor-or-self.
    pub anchor_of: Vec<usize>,
}

impl Trimmed {
    /// Carries a point of the trimmed tree back to the source tree.
    pub fn to_source(&self, source: &MergeTree, p: &MergePoint) -> MergePoint {
        let w = self.tree.lower_node(p);
        let h = self.tree.point_height(p);
        source
            .ancestor_at(&self.origin[w], h)
            .expect("trimmed points sit above their origin")
    }
}

/// The merge tree of `x -> -d(s, x)`.
///
/// Node ids follow the metric tree's ids, with `s` dropped (and later ids
/// shifted down by one) when `s` is a leaf absorbed into the infinite edge.
pub fn build_merge_tree(t: &MetricTree, s: usize) -> Result<MergeTree> {
    Ok(build_merge_tree_with_ids(t, s)?.0)
}

/// As [`build_merge_tree`], also returning the metric-tree vertex of every
/// merge-tree node.
pub fn build_merge_tree_with_ids(t: &MetricTree, s: usize) -> Result<(MergeTree, Vec<usize>)> {
    let n = t.node_count();
    if s >= n {
        return Err(Error::InvalidArgument(format!("root {s} is not a vertex (0..{n})")));
    }
    let dist = t.distances_from(s);
    let mut parent = vec![None; n];
    let mut stack = vec![s];
    let mut seen = vec![false; n];
    seen[s] = true;
    while let Some(x) = stack.pop() {
        for (y, _) in t.neighbors(x) {
            if !seen[y] {
                seen[y] = true;
                parent[y] = Some(x);
                stack.push(y);
            }
        }
    }
    let absorb = n > 1 && t.degree(s) == 1;
    let vertices: Vec<usize> = (0..n).filter(|&v| !(absorb && v == s)).collect();
    let mut new_id = vec![usize::MAX; n];
    for (i, &v) in vertices.iter().enumerate() {
        new_id[v] = i;
    }
    let heights = vertices.iter().map(|&v| -&dist[v]).collect();
    let parents = vertices
        .iter()
        .map(|&v| match parent[v] {
            Some(p) if !(absorb && p == s) => Some(new_id[p]),
            _ => None,
        })
        .collect();
    Ok((MergeTree::new(heights, parents)?, vertices))
}
