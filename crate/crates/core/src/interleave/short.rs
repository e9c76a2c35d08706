//! Approximate decision for trees with short edges.
//!
//! Both trees are trimmed to their points of extent at least `2 L eps`.
//! Anchor heights are the heights of leaves, branching nodes and roots of the
//! trimmed trees; an anchor `h` is a level when no anchor lies in
//! `(h, h + 2 eps]`. Every point at a level height is a matching point. If
//! the trees induced on matching points are not level-isomorphic the answer
//! is NO; otherwise maps are read off the isomorphism.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::interleave::maps::TreeMap;
use crate::merge_tree::{MergePoint, MergeTree};
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    F,
    G,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchingLevels {
    /// Sorted union of anchor heights of both trees.
    pub anchors: Vec<Rational>,
    /// Sorted level heights.
    pub levels: Vec<Rational>,
    pub f_points: Vec<Vec<MergePoint>>,
    pub g_points: Vec<Vec<MergePoint>>,
}

impl MatchingLevels {
    fn points(&self, side: Side) -> &[Vec<MergePoint>] {
        match side {
            Side::F => &self.f_points,
            Side::G => &self.g_points,
        }
    }
}

/// Heights of leaves, branching nodes and the root.
pub fn anchor_heights(m: &MergeTree) -> BTreeSet<Rational> {
    (0..m.node_count())
        .filter(|&v| m.children(v).len() != 1 || v == m.root())
        .map(|v| m.height(v).clone())
        .collect()
}

pub fn matching_levels(ft: &MergeTree, gt: &MergeTree, eps: &Rational) -> MatchingLevels {
    let mut all = anchor_heights(ft);
    all.extend(anchor_heights(gt));
    let anchors: Vec<Rational> = all.into_iter().collect();
    let twice = eps.mul_int(2);
    let levels: Vec<Rational> = anchors
        .iter()
        .enumerate()
        .filter(|(i, h)| match anchors.get(i + 1) {
            Some(next) => *next > *h + &twice,
            None => true,
        })
        .map(|(_, h)| h.clone())
        .collect();
    let f_points = levels.iter().map(|h| ft.points_at_height(h)).collect();
    let g_points = levels.iter().map(|h| gt.points_at_height(h)).collect();
    MatchingLevels {
        anchors,
        levels,
        f_points,
        g_points,
    }
}

/// Rooted tree on the matching points of one side; a node's parent is its
/// ancestor at the next level up.
#[derive(Clone, Debug)]
pub struct InducedTree {
    pub points: Vec<MergePoint>,
    pub level: Vec<usize>,
    pub parent: Vec<Option<usize>>,
    pub children: Vec<Vec<usize>>,
    index: HashMap<MergePoint, usize>,
}

impl InducedTree {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn index_of(&self, p: &MergePoint) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn roots(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.parent[i].is_none()).collect()
    }
}

pub fn induced_tree(m: &MergeTree, levels: &MatchingLevels, side: Side) -> InducedTree {
    let per_level = levels.points(side);
    let mut points = Vec::new();
    let mut level = Vec::new();
    for (i, pts) in per_level.iter().enumerate() {
        for p in pts {
            points.push(p.clone());
            level.push(i);
        }
    }
    let index: HashMap<MergePoint, usize> =
        points.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
    let mut parent = vec![None; points.len()];
    let mut children = vec![Vec::new(); points.len()];
    for i in 0..points.len() {
        let l = level[i];
        if let Some(up) = levels.levels.get(l + 1) {
            let a = m
                .ancestor_at(&points[i], up)
                .expect("higher levels sit above lower ones");
            let j = index[&a];
            parent[i] = Some(j);
            children[j].push(i);
        }
    }
    InducedTree {
        points,
        level,
        parent,
        children,
        index,
    }
}

/// Level-preserving isomorphism between induced trees via canonical codes;
/// returns the image in `b` of every node of `a`.
pub fn level_isomorphism(a: &InducedTree, b: &InducedTree) -> Option<Vec<usize>> {
    if a.len() != b.len() {
        return None;
    }
    let (ra, rb) = (a.roots(), b.roots());
    if ra.len() != 1 || rb.len() != 1 {
        return None;
    }
    let mut table: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
    let mut codes = |t: &InducedTree| -> Vec<usize> {
        let mut order: Vec<usize> = (0..t.len()).collect();
        order.sort_by_key(|&i| t.level[i]);
        let mut code = vec![0usize; t.len()];
        for i in order {
            let mut kids: Vec<usize> = t.children[i].iter().map(|&c| code[c]).collect();
            kids.sort_unstable();
            let next = table.len();
            code[i] = *table.entry((t.level[i], kids)).or_insert(next);
        }
        code
    };
    let ca = codes(a);
    let cb = codes(b);
    if ca[ra[0]] != cb[rb[0]] {
        return None;
    }
    let mut phi = vec![usize::MAX; a.len()];
    let mut stack = vec![(ra[0], rb[0])];
    while let Some((x, y)) = stack.pop() {
        phi[x] = y;
        let mut kx = a.children[x].clone();
        let mut ky = b.children[y].clone();
        kx.sort_by_key(|&c| (ca[c], c));
        ky.sort_by_key(|&c| (cb[c], c));
        stack.extend(kx.into_iter().zip(ky));
    }
    Some(phi)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ShortPlan {
    /// Trimmed at `2 l eps`; maps certified at `4 l eps`.
    Trimmed { l: u64 },
    /// No trimming; maps certified at `4 n eps`.
    Untrimmed,
}

#[derive(Clone, Debug)]
pub struct ShortOutcome {
    /// Node images before stretching; `None` means NO.
    pub maps: Option<(TreeMap, TreeMap)>,
    pub certified: Rational,
    pub plan: ShortPlan,
    /// Total node count `n` used in the bound.
    pub n: usize,
}

impl ShortOutcome {
    pub fn factor(&self) -> u64 {
        match self.plan {
            ShortPlan::Trimmed { l } => 4 * l,
            ShortPlan::Untrimmed => 4 * self.n as u64,
        }
    }
}

/// `ceil(sqrt(2 n s)) + 1` with `s = (longest edge) / eps`.
pub fn trim_parameter(mf: &MergeTree, mg: &MergeTree, eps: &Rational) -> BigInt {
    let n = (mf.node_count() + mg.node_count()) as i64;
    let longest = [mf, mg]
        .iter()
        .filter_map(|m| m.edge_lengths().map(|s| s.max_length))
        .max()
        .unwrap_or_else(Rational::zero);
    let s = longest / eps;
    s.mul_int(2 * n).ceil_sqrt() + 1
}

struct Side2<'a> {
    src: &'a MergeTree,
    dst: &'a MergeTree,
    src_ind: &'a InducedTree,
    dst_ind: &'a InducedTree,
    phi: &'a [usize],
}

impl Side2<'_> {
    fn matched(&self, x: &MergePoint) -> MergePoint {
        let i = self.src_ind.index_of(x).expect("level points are matching points");
        self.dst_ind.points[self.phi[i]].clone()
    }

    // the point at height `h` below node `v`, through a chain of single children
    fn descend(&self, v: usize, h: &Rational) -> MergePoint {
        let mut u = v;
        loop {
            let c = self.src.children(u)[0];
            let hc = self.src.height(c);
            if hc == h {
                return MergePoint::node(c);
            }
            if hc < h {
                return MergePoint::Edge {
                    child: c,
                    height: h.clone(),
                };
            }
            u = c;
        }
    }

    fn images(&self, lv: &MatchingLevels, eps: &Rational) -> Vec<MergePoint> {
        let twice = eps.mul_int(2);
        (0..self.src.node_count())
            .map(|v| {
                let h = self.src.height(v);
                let x = MergePoint::node(v);
                if lv.levels.binary_search(h).is_ok() {
                    return self.matched(&x);
                }
                if lv.anchors.binary_search(h).is_err() {
                    let j = lv.anchors.partition_point(|a| a < h);
                    let (below, above) = (&lv.anchors[j - 1], &lv.anchors[j]);
                    if above - below > twice {
                        let foot = self.descend(v, below);
                        return self.dst.shift(&self.matched(&foot), &(h - below));
                    }
                }
                // lazily assigned: image of the lowest matching ancestor
                let i = lv.levels.partition_point(|l| l < h);
                let up = self.src.ancestor_at(&x, &lv.levels[i]).expect("levels reach the top");
                self.matched(&up)
            })
            .collect()
    }
}

/// Approximate decision. NO is always correct; YES comes with maps that are
/// compatible at `certified` once stretched.
pub fn decide_short(mf: &MergeTree, mg: &MergeTree, eps: &Rational) -> Result<ShortOutcome> {
    if !eps.is_positive() {
        return Err(Error::InvalidArgument(format!("eps must be positive, got {eps}")));
    }
    let n = mf.node_count() + mg.node_count();
    let l = trim_parameter(mf, mg, eps);
    let (plan, tau, certified) = if l < BigInt::from(n) {
        let l = l.to_u64().expect("below n");
        let tau = eps.mul_int(2 * l as i64);
        (ShortPlan::Trimmed { l }, tau, eps.mul_int(4 * l as i64))
    } else {
        (ShortPlan::Untrimmed, Rational::zero(), eps.mul_int(4 * n as i64))
    };
    let ft = mf.trim(&tau);
    let gt = mg.trim(&tau);
    let lv = matching_levels(&ft.tree, &gt.tree, eps);
    let fi = induced_tree(&ft.tree, &lv, Side::F);
    let gi = induced_tree(&gt.tree, &lv, Side::G);
    let maps = level_isomorphism(&fi, &gi).map(|phi| {
        let mut inv = vec![0; phi.len()];
        for (i, &j) in phi.iter().enumerate() {
            inv[j] = i;
        }
        let a = Side2 {
            src: &ft.tree,
            dst: &gt.tree,
            src_ind: &fi,
            dst_ind: &gi,
            phi: &phi,
        }
        .images(&lv, eps);
        let b = Side2 {
            src: &gt.tree,
            dst: &ft.tree,
            src_ind: &gi,
            dst_ind: &fi,
            phi: &inv,
        }
        .images(&lv, eps);
        (
            TreeMap::new(a).untrim(&ft, &gt, mg),
            TreeMap::new(b).untrim(&gt, &ft, mf),
        )
    });
    Ok(ShortOutcome {
        maps,
        certified,
        plan,
        n,
    })
}
