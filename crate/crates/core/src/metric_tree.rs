//! Weighted trees viewed as geodesic metric spaces.
//!
//! A [`MetricTree`] is an unrooted tree whose edges carry strictly positive
//! exact lengths. Points of the geometric realization are [`TreePoint`]s:
//! either a vertex or a position strictly inside an edge.

use std::collections::VecDeque;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub length: Rational,
}

#[derive(Clone, Debug)]
pub struct MetricTree {
    edges: Vec<Edge>,
    /// `adjacency[x]` lists `(neighbor, edge id)`.
    adjacency: Vec<Vec<(usize, usize)>>,
    labels: Option<Vec<String>>,
    // rooted at node 0, used for distance queries
    parent: Vec<Option<usize>>,
    depth: Vec<Rational>,
    level: Vec<usize>,
}

/// A point of the geometric realization.
///
/// `Edge` offsets are measured from the edge's `u` endpoint and lie strictly
/// inside `(0, length)`; endpoint offsets are normalized to `Node`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TreePoint {
    Node(usize),
    Edge { edge: usize, offset: Rational },
}

impl MetricTree {
    pub fn new(node_count: usize, edges: Vec<Edge>) -> Result<Self> {
        if node_count == 0 {
            return Err(Error::InvalidTree("a tree needs at least one node".into()));
        }
        if edges.len() + 1 != node_count {
            return Err(Error::InvalidTree(format!(
                "{} nodes need exactly {} edges, got {}",
                node_count,
                node_count - 1,
                edges.len()
            )));
        }
        let mut adjacency = vec![Vec::new(); node_count];
        let mut seen = std::collections::HashSet::new();
        for (id, e) in edges.iter().enumerate() {
            if e.u >= node_count || e.v >= node_count {
                return Err(Error::InvalidTree(format!(
                    "edge ({}, {}) references a node outside 0..{}",
                    e.u, e.v, node_count
                )));
            }
            if e.u == e.v {
                return Err(Error::InvalidTree(format!("self-loop at node {}", e.u)));
            }
            if !e.length.is_positive() {
                return Err(Error::InvalidTree(format!(
                    "edge ({}, {}) has non-positive length {}",
                    e.u, e.v, e.length
                )));
            }
            if !seen.insert((e.u.min(e.v), e.u.max(e.v))) {
                return Err(Error::InvalidTree(format!("duplicate edge ({}, {})", e.u, e.v)));
            }
            adjacency[e.u].push((e.v, id));
            adjacency[e.v].push((e.u, id));
        }
        let mut parent = vec![None; node_count];
        let mut depth = vec![Rational::zero(); node_count];
        let mut level = vec![0usize; node_count];
        let mut visited = vec![false; node_count];
        let mut queue = VecDeque::from([0usize]);
        visited[0] = true;
        while let Some(x) = queue.pop_front() {
            for &(y, e) in &adjacency[x] {
                if !visited[y] {
                    visited[y] = true;
                    parent[y] = Some(x);
                    depth[y] = &depth[x] + &edges[e].length;
                    level[y] = level[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        if visited.iter().any(|v| !v) {
            return Err(Error::InvalidTree("edge set is disconnected (or cyclic)".into()));
        }
        Ok(MetricTree {
            edges,
            adjacency,
            labels: None,
            parent,
            depth,
            level,
        })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.node_count() {
            return Err(Error::InvalidArgument(format!(
                "expected {} labels, got {}",
                self.node_count(),
                labels.len()
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn neighbors(&self, x: usize) -> impl Iterator<Item = (usize, &Rational)> + '_ {
        self.adjacency[x]
            .iter()
            .map(move |&(y, e)| (y, &self.edges[e].length))
    }

    pub fn degree(&self, x: usize) -> usize {
        self.adjacency[x].len()
    }

    pub fn is_leaf(&self, x: usize) -> bool {
        self.degree(x) == 1
    }

    /// Returns a copy with every edge length multiplied by `k > 0`.
    pub fn scaled(&self, k: &Rational) -> Result<Self> {
        let edges = self
            .edges
            .iter()
            .map(|e| Edge {
                u: e.u,
                v: e.v,
                length: &e.length * k,
            })
            .collect();
        let mut t = MetricTree::new(self.node_count(), edges)?;
        t.labels = self.labels.clone();
        Ok(t)
    }

    /// Parses the edge-list format: a node count line, then `u v length` lines.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (first_no, first) = lines
            .next()
            .ok_or_else(|| Error::Parse("empty tree file".into()))?;
        let n: usize = first.parse().map_err(|_| Error::Malformed {
            line: first_no,
            message: format!("expected node count, got `{first}`"),
        })?;
        let mut edges = Vec::new();
        for (no, line) in lines {
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 3 {
                return Err(Error::Malformed {
                    line: no,
                    message: format!("expected `u v length`, got `{line}`"),
                });
            }
            let endpoint = |s: &str| {
                s.parse::<usize>().map_err(|_| Error::Malformed {
                    line: no,
                    message: format!("invalid node id `{s}`"),
                })
            };
            let u = endpoint(fields[0])?;
            let v = endpoint(fields[1])?;
            let length: Rational = fields[2].parse().map_err(|_| Error::Malformed {
                line: no,
                message: format!("invalid length `{}`", fields[2]),
            })?;
            edges.push(Edge { u, v, length });
        }
        MetricTree::new(n, edges)
    }

    /// Deterministic writer: edges as `min max length`, sorted by endpoints.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let Some(labels) = &self.labels {
            for (i, l) in labels.iter().enumerate() {
                let _ = writeln!(out, "# node {i} {l}");
            }
        }
        let _ = writeln!(out, "{}", self.node_count());
        let mut sorted: Vec<(usize, usize, &Rational)> = self
            .edges
            .iter()
            .map(|e| (e.u.min(e.v), e.u.max(e.v), &e.length))
            .collect();
        sorted.sort_by_key(|&(u, v, _)| (u, v));
        for (u, v, l) in sorted {
            let _ = writeln!(out, "{u} {v} {l}");
        }
        out
    }

    fn lca(&self, mut a: usize, mut b: usize) -> usize {
        while self.level[a] > self.level[b] {
            a = self.parent[a].expect("non-root has parent");
        }
        while self.level[b] > self.level[a] {
            b = self.parent[b].expect("non-root has parent");
        }
        while a != b {
            a = self.parent[a].expect("non-root has parent");
            b = self.parent[b].expect("non-root has parent");
        }
        a
    }

    /// Length of the unique path between two vertices.
    pub fn node_distance(&self, a: usize, b: usize) -> Rational {
        let c = self.lca(a, b);
        &self.depth[a] + &self.depth[b] - self.depth[c].mul_int(2)
    }

    /// Single-source distances to all vertices.
    pub fn distances_from(&self, source: usize) -> Vec<Rational> {
        let mut dist: Vec<Option<Rational>> = vec![None; self.node_count()];
        dist[source] = Some(Rational::zero());
        let mut stack = vec![source];
        while let Some(x) = stack.pop() {
            let dx = dist[x].clone().expect("visited");
            for &(y, e) in &self.adjacency[x] {
                if dist[y].is_none() {
                    dist[y] = Some(&dx + &self.edges[e].length);
                    stack.push(y);
                }
            }
        }
        dist.into_iter().map(|d| d.expect("connected")).collect()
    }

    /// All-pairs vertex distance matrix.
    pub fn distance_matrix(&self) -> Vec<Vec<Rational>> {
        (0..self.node_count()).map(|s| self.distances_from(s)).collect()
    }

    /// Canonical point at `offset` from the `u` endpoint of `edge`.
    pub fn point_on_edge(&self, edge: usize, offset: Rational) -> Result<TreePoint> {
        let e = self
            .edges
            .get(edge)
            .ok_or_else(|| Error::InvalidPoint(format!("no edge {edge}")))?;
        if offset.is_negative() || offset > e.length {
            return Err(Error::InvalidPoint(format!(
                "offset {offset} outside [0, {}] on edge {edge}",
                e.length
            )));
        }
        Ok(if offset.is_zero() {
            TreePoint::Node(e.u)
        } else if offset == e.length {
            TreePoint::Node(e.v)
        } else {
            TreePoint::Edge { edge, offset }
        })
    }

    pub fn validate_point(&self, p: &TreePoint) -> Result<()> {
        match p {
            TreePoint::Node(x) if *x < self.node_count() => Ok(()),
            TreePoint::Node(x) => Err(Error::InvalidPoint(format!("no node {x}"))),
            TreePoint::Edge { edge, offset } => match self.edges.get(*edge) {
                Some(e) if offset.is_positive() && *offset < e.length => Ok(()),
                Some(_) => Err(Error::InvalidPoint(format!(
                    "offset {offset} is not interior to edge {edge}"
                ))),
                None => Err(Error::InvalidPoint(format!("no edge {edge}"))),
            },
        }
    }

    /// Vertices a point hangs off, with the distance to each.
    fn anchors(&self, p: &TreePoint) -> Vec<(usize, Rational)> {
        match p {
            TreePoint::Node(x) => vec![(*x, Rational::zero())],
            TreePoint::Edge { edge, offset } => {
                let e = &self.edges[*edge];
                vec![(e.u, offset.clone()), (e.v, &e.length - offset)]
            }
        }
    }

    /// Geodesic distance between two points.
    pub fn path_distance(&self, x: &TreePoint, y: &TreePoint) -> Result<Rational> {
        self.validate_point(x)?;
        self.validate_point(y)?;
        if let (
            TreePoint::Edge { edge: e1, offset: o1 },
            TreePoint::Edge { edge: e2, offset: o2 },
        ) = (x, y)
        {
            if e1 == e2 {
                return Ok((o1 - o2).abs());
            }
        }
        let ax = self.anchors(x);
        let ay = self.anchors(y);
        let best = ax
            .iter()
            .flat_map(|(a, da)| {
                ay.iter()
                    .map(move |(b, db)| da + db + self.node_distance(*a, *b))
            })
            .min()
            .expect("anchors are nonempty");
        Ok(best)
    }

    /// Farthest vertex from `source`, ties broken by smallest id.
    fn farthest_from(&self, source: usize) -> (usize, Rational) {
        let dist = self.distances_from(source);
        let mut best = 0;
        for (i, d) in dist.iter().enumerate() {
            if *d > dist[best] {
                best = i;
            }
        }
        (best, dist[best].clone())
    }

    /// Two-sweep diameter: `(a, b, length)` with `a`, `b` realizing the diameter.
    pub fn diameter(&self) -> (usize, usize, Rational) {
        let (a, _) = self.farthest_from(0);
        let (b, d) = self.farthest_from(a);
        (a, b, d)
    }

    /// The smallest-id vertex that is an endpoint of some longest path.
    ///
    /// In a tree the eccentricity of `v` is `max(d(a, v), d(b, v))` for any
    /// diameter pair `(a, b)`, so the full endpoint set falls out of the two
    /// sweeps.
    pub fn diameter_endpoint(&self) -> usize {
        let (a, b, diam) = self.diameter();
        let da = self.distances_from(a);
        let db = self.distances_from(b);
        (0..self.node_count())
            .find(|&v| da[v] == diam || db[v] == diam)
            .expect("a diameter endpoint exists")
    }
}

/// A finite relation between points of two metric trees.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Correspondence {
    pub pairs: Vec<(TreePoint, TreePoint)>,
}

impl Correspondence {
    pub fn new(pairs: Vec<(TreePoint, TreePoint)>) -> Self {
        Correspondence { pairs }
    }

    /// Pairs with the roles of the two trees exchanged.
    pub fn reversed(&self) -> Self {
        Correspondence {
            pairs: self
                .pairs
                .iter()
                .map(|(x, y)| (y.clone(), x.clone()))
                .collect(),
        }
    }

    /// Whether every element of `left` and of `right` occurs in some pair.
    pub fn covers(&self, left: &[TreePoint], right: &[TreePoint]) -> bool {
        left.iter().all(|a| self.pairs.iter().any(|(x, _)| x == a))
            && right.iter().all(|b| self.pairs.iter().any(|(_, y)| y == b))
    }

    /// Covers all vertices of both trees.
    pub fn covers_vertices(&self, t1: &MetricTree, t2: &MetricTree) -> bool {
        let left: Vec<_> = (0..t1.node_count()).map(TreePoint::Node).collect();
        let right: Vec<_> = (0..t2.node_count()).map(TreePoint::Node).collect();
        self.covers(&left, &right)
    }
}

/// Largest additive distance error over all pairs of pairs.
pub fn correspondence_distortion(
    t1: &MetricTree,
    t2: &MetricTree,
    c: &Correspondence,
) -> Result<Rational> {
    if c.pairs.is_empty() {
        return Err(Error::InvalidArgument("empty correspondence".into()));
    }
    for (x, y) in &c.pairs {
        t1.validate_point(x)?;
        t2.validate_point(y)?;
    }
    let mut worst = Rational::zero();
    for (i, (x, y)) in c.pairs.iter().enumerate() {
        for (x2, y2) in &c.pairs[i + 1..] {
            let gap = (t1.path_distance(x, x2)? - t2.path_distance(y, y2)?).abs();
            if gap > worst {
                worst = gap;
            }
        }
    }
    Ok(worst)
}

/// Exact Gromov-Hausdorff distance between the vertex sets of two trees
/// (with their induced path metrics), by branch and bound over all
/// correspondences.
///
/// This is the distance of the finite vertex spaces, not of the continuous
/// trees; the two can differ by up to the longest edge length.
pub fn gh_bruteforce_vertices(
    t1: &MetricTree,
    t2: &MetricTree,
    max_size: usize,
) -> Result<Rational> {
    let (n1, n2) = (t1.node_count(), t2.node_count());
    if n1 > max_size || n2 > max_size {
        return Err(Error::SizeGuard(format!(
            "vertex oracle limited to {max_size} nodes per tree, got {n1} and {n2}"
        )));
    }
    let search = FiniteGhSearch {
        d1: t1.distance_matrix(),
        d2: t2.distance_matrix(),
    };
    let mut best: Option<Rational> = None;
    let mut pairs = Vec::with_capacity(n1 + n2);
    search.assign_left(0, &mut pairs, &Rational::zero(), &mut best);
    Ok(best.expect("a correspondence always exists").half())
}

struct FiniteGhSearch {
    d1: Vec<Vec<Rational>>,
    d2: Vec<Vec<Rational>>,
}

impl FiniteGhSearch {
    fn added_cost(&self, pairs: &[(usize, usize)], a: usize, b: usize) -> Rational {
        pairs
            .iter()
            .map(|&(x, y)| (&self.d1[a][x] - &self.d2[b][y]).abs())
            .max()
            .unwrap_or_else(Rational::zero)
    }

    fn better(best: &Option<Rational>, v: &Rational) -> bool {
        best.as_ref().is_none_or(|b| v < b)
    }

    // every left vertex picks one partner
    fn assign_left(
        &self,
        a: usize,
        pairs: &mut Vec<(usize, usize)>,
        cost: &Rational,
        best: &mut Option<Rational>,
    ) {
        if a == self.d1.len() {
            self.assign_right(0, pairs, cost, best);
            return;
        }
        for b in 0..self.d2.len() {
            let c = cost.clone().max(self.added_cost(pairs, a, b));
            if Self::better(best, &c) {
                pairs.push((a, b));
                self.assign_left(a + 1, pairs, &c, best);
                pairs.pop();
            }
        }
    }

    // uncovered right vertices pick one partner; extra pairs never help
    fn assign_right(
        &self,
        b: usize,
        pairs: &mut Vec<(usize, usize)>,
        cost: &Rational,
        best: &mut Option<Rational>,
    ) {
        if b == self.d2.len() {
            if Self::better(best, cost) {
                *best = Some(cost.clone());
            }
            return;
        }
        if pairs.iter().any(|&(_, y)| y == b) {
            self.assign_right(b + 1, pairs, cost, best);
            return;
        }
        for a in 0..self.d1.len() {
            let c = cost.clone().max(self.added_cost(pairs, a, b));
            if Self::better(best, &c) {
                pairs.push((a, b));
                self.assign_right(b + 1, pairs, &c, best);
                pairs.pop();
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testing::arb_tree;
    use proptest::prelude::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn path_abc() -> MetricTree {
        MetricTree::parse("3\n0 1 1\n1 2 2").unwrap()
    }

    #[test]
    fn parses_edge_list() {
        let t = path_abc();
        assert_eq!(t.node_count(), 3);
        assert_eq!(t.edges().len(), 2);
        assert_eq!(t.node_distance(0, 2), q("3"));
        let single = MetricTree::parse("1").unwrap();
        assert_eq!(single.node_count(), 1);
        let commented = MetricTree::parse("# header\n2\n\n0 1 3/4\n").unwrap();
        assert_eq!(commented.edges()[0].length, q("3/4"));
    }

    #[test]
    fn rejects_bad_trees() {
        assert!(matches!(
            MetricTree::parse("3\n0 1 1\n0 1 2"),
            Err(Error::InvalidTree(m)) if m.contains("duplicate")
        ));
        assert!(MetricTree::parse("2\n0 1 0").is_err());
        assert!(MetricTree::parse("2\n0 1 -1").is_err());
        assert!(MetricTree::parse("4\n0 1 1\n2 3 1").is_err());
        assert!(MetricTree::parse("3\n0 1 1\n1 2 1\n2 0 1").is_err());
        assert!(MetricTree::parse("2\n0 5 1").is_err());
        assert!(matches!(
            MetricTree::parse("2\n0 1"),
            Err(Error::Malformed { line: 2, .. })
        ));
        assert!(MetricTree::parse("").is_err());
    }

    #[test]
    fn writer_round_trips() {
        let t = MetricTree::parse("4\n2 1 1.5\n0 1 1\n3 1 1/3").unwrap();
        let text = t.to_text();
        assert_eq!(text, "4\n0 1 1/1\n1 2 3/2\n1 3 1/3\n");
        let back = MetricTree::parse(&text).unwrap();
        assert_eq!(back.to_text(), text);
    }

    #[test]
    fn path_distances() {
        let t = path_abc();
        let a = TreePoint::Node(0);
        let c = TreePoint::Node(2);
        assert_eq!(t.path_distance(&a, &c).unwrap(), q("3"));
        assert_eq!(t.path_distance(&a, &a).unwrap(), q("0"));
        let mid = t.point_on_edge(0, q("1/2")).unwrap();
        assert_eq!(t.path_distance(&mid, &c).unwrap(), q("5/2"));
        let other = t.point_on_edge(1, q("1/2")).unwrap();
        assert_eq!(t.path_distance(&mid, &other).unwrap(), q("1"));
        let same_edge = t.point_on_edge(0, q("1/4")).unwrap();
        assert_eq!(t.path_distance(&mid, &same_edge).unwrap(), q("1/4"));
        assert_eq!(t.point_on_edge(0, q("0")).unwrap(), TreePoint::Node(0));
        assert_eq!(t.point_on_edge(0, q("1")).unwrap(), TreePoint::Node(1));
        assert!(t.point_on_edge(0, q("2")).is_err());
        assert!(t.path_distance(&TreePoint::Node(7), &a).is_err());
    }

    #[test]
    fn diameter_endpoints() {
        assert_eq!(path_abc().diameter_endpoint(), 0);
        // center 0; arms: z=1 (3), y=2 (2), x=3 (1)
        let star = MetricTree::parse("4\n0 1 3\n0 2 2\n0 3 1").unwrap();
        assert_eq!(star.diameter_endpoint(), 1);
        // same star numbered x=1, y=2, z=3: the smallest-id endpoint is y
        let star2 = MetricTree::parse("4\n0 1 1\n0 2 2\n0 3 3").unwrap();
        assert_eq!(star2.diameter_endpoint(), 2);
        assert_eq!(star2.diameter().2, q("5"));
        assert_eq!(MetricTree::parse("1").unwrap().diameter_endpoint(), 0);
    }

    #[test]
    fn distortion_examples() {
        let p = path_abc();
        let c = Correspondence::new(vec![
            (TreePoint::Node(0), TreePoint::Node(0)),
            (TreePoint::Node(2), TreePoint::Node(2)),
        ]);
        assert_eq!(correspondence_distortion(&p, &p, &c).unwrap(), q("0"));
        let three = MetricTree::parse("2\n0 1 3").unwrap();
        let four = MetricTree::parse("2\n0 1 4").unwrap();
        let ends = Correspondence::new(vec![
            (TreePoint::Node(0), TreePoint::Node(0)),
            (TreePoint::Node(1), TreePoint::Node(1)),
        ]);
        assert_eq!(correspondence_distortion(&three, &four, &ends).unwrap(), q("1"));
        assert!(correspondence_distortion(&three, &four, &Correspondence::default()).is_err());
        assert!(ends.covers_vertices(&three, &four));
    }

    #[test]
    fn vertex_gh_oracle() {
        let two = MetricTree::parse("2\n0 1 2").unwrap();
        let four = MetricTree::parse("2\n0 1 4").unwrap();
        assert_eq!(gh_bruteforce_vertices(&two, &four, 6).unwrap(), q("1"));
        // frozen from an independent enumeration of all relations
        let p11 = MetricTree::parse("3\n0 1 1\n1 2 1").unwrap();
        let p12 = MetricTree::parse("3\n0 1 1\n1 2 2").unwrap();
        assert_eq!(gh_bruteforce_vertices(&p11, &p12, 6).unwrap(), q("1/2"));
        assert_eq!(gh_bruteforce_vertices(&p12, &p12, 6).unwrap(), q("0"));
        let big = MetricTree::parse("8\n0 1 1\n1 2 1\n2 3 1\n3 4 1\n4 5 1\n5 6 1\n6 7 1").unwrap();
        assert!(matches!(
            gh_bruteforce_vertices(&big, &p11, 6),
            Err(Error::SizeGuard(_))
        ));
    }

    fn arb_points(t: &MetricTree, picks: &[(usize, i64)]) -> Vec<TreePoint> {
        picks
            .iter()
            .map(|&(k, frac)| {
                if t.edges().is_empty() || k % 3 == 0 {
                    TreePoint::Node(k % t.node_count())
                } else {
                    let e = k % t.edges().len();
                    let off = &t.edges()[e].length * Rational::new(frac, 8);
                    t.point_on_edge(e, off).unwrap()
                }
            })
            .collect()
    }

    proptest! {
        #[test]
        fn path_distance_is_a_metric(
            t in arb_tree(9),
            picks in prop::collection::vec((0usize..100, 0i64..=8), 3..6),
        ) {
            let pts = arb_points(&t, &picks);
            for x in &pts {
                prop_assert!(t.path_distance(x, x).unwrap().is_zero());
                for y in &pts {
                    let dxy = t.path_distance(x, y).unwrap();
                    prop_assert!(!dxy.is_negative());
                    prop_assert_eq!(&dxy, &t.path_distance(y, x).unwrap());
                    if dxy.is_zero() { prop_assert_eq!(x, y); }
                    for z in &pts {
                        let via = t.path_distance(x, z).unwrap() + t.path_distance(z, y).unwrap();
                        prop_assert!(dxy <= via);
                    }
                }
            }
        }

        #[test]
        fn two_sweep_matches_all_pairs(t in arb_tree(50)) {
            let m = t.distance_matrix();
            let brute = m.iter().flatten().max().unwrap().clone();
            let (a, b, d) = t.diameter();
            prop_assert_eq!(&d, &brute);
            prop_assert_eq!(&t.node_distance(a, b), &brute);
            let e = t.diameter_endpoint();
            prop_assert!(m[e].contains(&brute));
            if t.node_count() > 1 { prop_assert!(t.is_leaf(e)); }
            // smallest id among all endpoints
            let first = (0..t.node_count()).find(|&v| m[v].contains(&brute)).unwrap();
            prop_assert_eq!(e, first);
        }

        #[test]
        fn distortion_symmetric_under_swap(
            t1 in arb_tree(6),
            t2 in arb_tree(6),
            raw in prop::collection::vec((0usize..100, 0usize..100), 1..6),
        ) {
            let c = Correspondence::new(raw.iter().map(|&(a, b)| {
                (TreePoint::Node(a % t1.node_count()), TreePoint::Node(b % t2.node_count()))
            }).collect());
            prop_assert_eq!(
                correspondence_distortion(&t1, &t2, &c).unwrap(),
                correspondence_distortion(&t2, &t1, &c.reversed()).unwrap()
            );
        }

        #[test]
        fn vertex_gh_of_self_is_zero(t in arb_tree(6)) {
            prop_assert!(gh_bruteforce_vertices(&t, &t, 6).unwrap().is_zero());
        }
    }
}
