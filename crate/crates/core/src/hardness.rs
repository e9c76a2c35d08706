//! Hard instance generators: 3-PARTITION to balanced partition, and
//! balanced partition to a pair of metric trees whose GH distance is at
//! most 1 on yes-instances and at least 3 on no-instances.
//!
//! Node numbering of the generated trees: the hub is 0, the hub's pendant
//! vertex is 1, then each star center is followed by its leaves.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::metric_tree::{Correspondence, Edge, MetricTree, TreePoint};
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BalPartInstance {
    pub x: Vec<u64>,
    pub m: usize,
}

impl BalPartInstance {
    pub fn new(x: Vec<u64>, m: usize) -> Result<Self> {
        if x.is_empty() || x.contains(&0) {
            return Err(Error::InvalidArgument("elements must be positive and nonempty".into()));
        }
        if m == 0 || m > x.len() {
            return Err(Error::InvalidArgument(format!(
                "need 1 <= m <= {}, got {m}",
                x.len()
            )));
        }
        Ok(BalPartInstance { x, m })
    }

    pub fn total(&self) -> u64 {
        self.x.iter().sum()
    }

    /// Per-part target sum, if the total divides evenly.
    pub fn target(&self) -> Option<u64> {
        let t = self.total();
        t.is_multiple_of(self.m as u64).then(|| t / self.m as u64)
    }

    /// Checks that `parts` is a balanced partition of the indices.
    pub fn check_partition(&self, parts: &[Vec<usize>]) -> Result<()> {
        let target = self
            .target()
            .ok_or_else(|| Error::InvalidArgument("total is not divisible by m".into()))?;
        if parts.len() != self.m {
            return Err(Error::InvalidArgument(format!(
                "expected {} parts, got {}",
                self.m,
                parts.len()
            )));
        }
        let mut seen = vec![false; self.x.len()];
        for (j, part) in parts.iter().enumerate() {
            let mut sum = 0;
            for &i in part {
                if i >= self.x.len() || seen[i] {
                    return Err(Error::InvalidArgument(format!(
                        "index {i} is out of range or repeated"
                    )));
                }
                seen[i] = true;
                sum += self.x[i];
            }
            if sum != target {
                return Err(Error::InvalidArgument(format!(
                    "part {j} sums to {sum}, expected {target}"
                )));
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::InvalidArgument("partition misses an index".into()));
        }
        Ok(())
    }
}

/// Adds the total of `y` to every element; equal-sum parts of the result
/// then have equal sizes.
pub fn balpart_from_3partition(y: &[u64]) -> Result<BalPartInstance> {
    if y.is_empty() || !y.len().is_multiple_of(3) {
        return Err(Error::InvalidArgument(format!(
            "3-partition needs a multiple of 3 elements, got {}",
            y.len()
        )));
    }
    let shift: u64 = y.iter().sum();
    BalPartInstance::new(y.iter().map(|a| a + shift).collect(), y.len() / 3)
}

/// Exhaustive search for a balanced partition; parts list element indices.
pub fn balpart_bruteforce(inst: &BalPartInstance, max_n: usize) -> Result<Option<Vec<Vec<usize>>>> {
    if inst.x.len() > max_n {
        return Err(Error::SizeGuard(format!(
            "partition oracle limited to {max_n} elements, got {}",
            inst.x.len()
        )));
    }
    let Some(target) = inst.target() else {
        return Ok(None);
    };
    let mut order: Vec<usize> = (0..inst.x.len()).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(inst.x[i]));
    let mut sums = vec![0u64; inst.m];
    let mut parts = vec![Vec::new(); inst.m];
    fn go(
        k: usize,
        order: &[usize],
        x: &[u64],
        target: u64,
        sums: &mut [u64],
        parts: &mut [Vec<usize>],
    ) -> bool {
        if k == order.len() {
            return sums.iter().all(|&s| s == target);
        }
        let i = order[k];
        for j in 0..sums.len() {
            if sums[j] + x[i] > target {
                continue;
            }
            let fresh = sums[j] == 0;
            sums[j] += x[i];
            parts[j].push(i);
            if go(k + 1, order, x, target, sums, parts) {
                return true;
            }
            parts[j].pop();
            sums[j] -= x[i];
            // empty parts are interchangeable
            if fresh {
                break;
            }
        }
        false
    }
    if go(0, &order, &inst.x, target, &mut sums, &mut parts) {
        for p in &mut parts {
            p.sort_unstable();
        }
        Ok(Some(parts))
    } else {
        Ok(None)
    }
}

/// Exhaustive search for a partition into equal-sum triples.
pub fn three_partition_bruteforce(y: &[u64]) -> Option<Vec<[usize; 3]>> {
    if y.is_empty() || !y.len().is_multiple_of(3) {
        return None;
    }
    let m = y.len() / 3;
    let total: u64 = y.iter().sum();
    if !total.is_multiple_of(m as u64) {
        return None;
    }
    let target = total / m as u64;
    fn go(used: &mut [bool], y: &[u64], target: u64, out: &mut Vec<[usize; 3]>) -> bool {
        let Some(a) = used.iter().position(|u| !u) else {
            return true;
        };
        used[a] = true;
        for b in a + 1..y.len() {
            if used[b] {
                continue;
            }
            used[b] = true;
            for c in b + 1..y.len() {
                if !used[c] && y[a] + y[b] + y[c] == target {
                    used[c] = true;
                    out.push([a, b, c]);
                    if go(used, y, target, out) {
                        return true;
                    }
                    out.pop();
                    used[c] = false;
                }
            }
            used[b] = false;
        }
        used[a] = false;
        false
    }
    let mut out = Vec::new();
    go(&mut vec![false; y.len()], y, target, &mut out).then_some(out)
}

/// Positions of the stars in a generated tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarLayout {
    pub centers: Vec<usize>,
    /// Edge id of hub -> center, oriented from the hub.
    pub spoke_edges: Vec<usize>,
    pub leaves: Vec<Vec<usize>>,
    /// Edge ids of center -> leaf, oriented from the center.
    pub leaf_edges: Vec<Vec<usize>>,
}

#[derive(Clone, Debug)]
pub struct HardPair {
    pub t1: MetricTree,
    pub t2: MetricTree,
    pub lambda: Rational,
    pub rho: Rational,
    pub instance: BalPartInstance,
    pub layout1: StarLayout,
    pub layout2: StarLayout,
}

fn star_tree(arms: &[u64], arm_length: &Rational, rho: &Rational) -> Result<(MetricTree, StarLayout)> {
    let mut edges = vec![Edge {
        u: 0,
        v: 1,
        length: rho.clone(),
    }];
    let mut layout = StarLayout {
        centers: Vec::new(),
        spoke_edges: Vec::new(),
        leaves: Vec::new(),
        leaf_edges: Vec::new(),
    };
    let mut next = 2;
    for &k in arms {
        let c = next;
        next += 1;
        layout.centers.push(c);
        layout.spoke_edges.push(edges.len());
        edges.push(Edge {
            u: 0,
            v: c,
            length: Rational::from_integer(2),
        });
        let (mut ls, mut es) = (Vec::new(), Vec::new());
        for _ in 0..k {
            ls.push(next);
            es.push(edges.len());
            edges.push(Edge {
                u: c,
                v: next,
                length: arm_length.clone(),
            });
            next += 1;
        }
        layout.leaves.push(ls);
        layout.leaf_edges.push(es);
    }
    Ok((MetricTree::new(next, edges)?, layout))
}

pub fn build_hard_pair(inst: &BalPartInstance, lambda: &Rational, rho: &Rational) -> Result<HardPair> {
    if *lambda <= Rational::from_integer(6) {
        return Err(Error::InvalidArgument(format!("lambda must exceed 6, got {lambda}")));
    }
    if !rho.is_positive() || *rho >= lambda - Rational::from_integer(6) {
        return Err(Error::InvalidArgument(format!(
            "rho must lie in (0, lambda - 6), got {rho}"
        )));
    }
    let target = inst.target().ok_or_else(|| {
        Error::InvalidArgument(format!(
            "total {} is not divisible by m = {}",
            inst.total(),
            inst.m
        ))
    })?;
    let (t1, layout1) = star_tree(&inst.x, lambda, rho)?;
    let (t2, layout2) = star_tree(&vec![target; inst.m], &(lambda + Rational::one()), rho)?;
    Ok(HardPair {
        t1,
        t2,
        lambda: lambda.clone(),
        rho: rho.clone(),
        instance: inst.clone(),
        layout1,
        layout2,
    })
}

/// Vertex-level correspondence of distortion 2 built from a balanced
/// partition.
///
/// Hubs, pendants and star leaves are paired directly (leaves block by
/// block). A center `p_i` in part `j` is paired with the point one unit from
/// `q_j` toward the leaf its first leaf went to, and `q_j` with the point one
/// unit from the first center of its part toward the hub. Pairing `p_i` with
/// `q_j` directly would put two centers at distance 4 onto one point.
pub fn yes_certificate(pair: &HardPair, parts: &[Vec<usize>]) -> Result<Correspondence> {
    pair.instance.check_partition(parts)?;
    let (l1, l2) = (&pair.layout1, &pair.layout2);
    let one = Rational::one();
    let mut pairs = vec![
        (TreePoint::Node(0), TreePoint::Node(0)),
        (TreePoint::Node(1), TreePoint::Node(1)),
    ];
    for (j, part) in parts.iter().enumerate() {
        let mut slot = 0;
        for &i in part {
            let first_slot = slot;
            for &leaf in &l1.leaves[i] {
                pairs.push((TreePoint::Node(leaf), TreePoint::Node(l2.leaves[j][slot])));
                slot += 1;
            }
            let toward = pair.t2.point_on_edge(l2.leaf_edges[j][first_slot], one.clone())?;
            pairs.push((TreePoint::Node(l1.centers[i]), toward));
        }
        let lead = part[0];
        let near = pair.t1.point_on_edge(l1.spoke_edges[lead], one.clone())?;
        pairs.push((near, TreePoint::Node(l2.centers[j])));
    }
    Ok(Correspondence::new(pairs))
}

/// Plain-text sidecar describing a generated pair.
pub fn metadata(pair: &HardPair, label: Option<bool>) -> String {
    let mut out = String::new();
    let xs: Vec<String> = pair.instance.x.iter().map(|a| a.to_string()).collect();
    let _ = writeln!(out, "x: {}", xs.join(","));
    let _ = writeln!(out, "m: {}", pair.instance.m);
    let _ = writeln!(out, "lambda: {}", pair.lambda);
    let _ = writeln!(out, "rho: {}", pair.rho);
    if let Some(t) = pair.instance.target() {
        let _ = writeln!(out, "abar: {t}");
    }
    let _ = writeln!(
        out,
        "label: {}",
        match label {
            Some(true) => "yes",
            Some(false) => "no",
            None => "unknown",
        }
    );
    out
}

/// Replaces each edge of integer length `l` by a path of `l` unit edges.
/// New vertices are numbered after the original ones.
pub fn subdivide_to_unit(t: &MetricTree) -> Result<MetricTree> {
    let mut next = t.node_count();
    let mut edges = Vec::new();
    for e in t.edges() {
        let l = e
            .length
            .to_integer()
            .ok_or_else(|| Error::InvalidArgument(format!("edge length {} is not an integer", e.length)))?;
        let mut prev = e.u;
        for _ in 1..l {
            edges.push(Edge {
                u: prev,
                v: next,
                length: Rational::one(),
            });
            prev = next;
            next += 1;
        }
        edges.push(Edge {
            u: prev,
            v: e.v,
            length: Rational::one(),
        });
    }
    MetricTree::new(next, edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric_tree::correspondence_distortion;
    use crate::testing::arb_tree;
    use proptest::prelude::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn normalized(mut parts: Vec<Vec<usize>>, x: &[u64]) -> Vec<Vec<u64>> {
        let mut v: Vec<Vec<u64>> = parts
            .iter_mut()
            .map(|p| {
                let mut vals: Vec<u64> = p.iter().map(|&i| x[i]).collect();
                vals.sort_unstable();
                vals
            })
            .collect();
        v.sort();
        v
    }

    #[test]
    fn three_partition_transform() {
        assert_eq!(balpart_from_3partition(&[1, 1, 1]).unwrap().x, vec![4, 4, 4]);
        let b = balpart_from_3partition(&[1, 2, 3, 1, 2, 3]).unwrap();
        assert_eq!(b.x, vec![13, 14, 15, 13, 14, 15]);
        assert_eq!(b.m, 2);
        assert!(balpart_from_3partition(&[1, 2]).is_err());
    }

    #[test]
    fn partition_oracle() {
        let yes = BalPartInstance::new(vec![1, 2, 3], 2).unwrap();
        let p = balpart_bruteforce(&yes, 12).unwrap().unwrap();
        assert_eq!(normalized(p, &yes.x), vec![vec![1, 2], vec![3]]);
        let no = BalPartInstance::new(vec![1, 1, 4], 2).unwrap();
        assert_eq!(balpart_bruteforce(&no, 12).unwrap(), None);
        let one = BalPartInstance::new(vec![5], 1).unwrap();
        assert_eq!(balpart_bruteforce(&one, 12).unwrap(), Some(vec![vec![0]]));
        let big = BalPartInstance::new(vec![1; 13], 1).unwrap();
        assert!(matches!(balpart_bruteforce(&big, 12), Err(Error::SizeGuard(_))));
    }

    #[test]
    fn hard_pair_shape() {
        let inst = BalPartInstance::new(vec![1, 2, 3], 2).unwrap();
        let p = build_hard_pair(&inst, &q("7"), &q("1/2")).unwrap();
        assert_eq!(p.t1.node_count(), 11);
        assert_eq!(p.t2.node_count(), 10);
        let leaves1 = (0..11).filter(|&v| p.t1.is_leaf(v)).count();
        let leaves2 = (0..10).filter(|&v| p.t2.is_leaf(v)).count();
        assert_eq!(leaves1, 6 + 1);
        assert_eq!(leaves2, 2 * 3 + 1);
        assert!(build_hard_pair(&inst, &q("6"), &q("1/2")).is_err());
        assert!(build_hard_pair(&inst, &q("7"), &q("1")).is_err());
        let odd = BalPartInstance::new(vec![1, 2], 2).unwrap();
        assert!(build_hard_pair(&odd, &q("7"), &q("1/2")).is_err());
        let no = BalPartInstance::new(vec![1, 1, 4], 2).unwrap();
        assert!(build_hard_pair(&no, &q("7"), &q("1/2")).is_ok());
    }

    #[test]
    fn certificate_distortion() {
        let inst = BalPartInstance::new(vec![1, 2, 3], 2).unwrap();
        let p = build_hard_pair(&inst, &q("7"), &q("1/2")).unwrap();
        let c = yes_certificate(&p, &[vec![2], vec![0, 1]]).unwrap();
        assert!(c.covers_vertices(&p.t1, &p.t2));
        assert_eq!(correspondence_distortion(&p.t1, &p.t2, &c).unwrap(), q("2"));
        assert!(yes_certificate(&p, &[vec![0], vec![1, 2]]).is_err());

        let sym = BalPartInstance::new(vec![2, 2], 2).unwrap();
        let p = build_hard_pair(&sym, &q("7"), &q("1/2")).unwrap();
        let c = yes_certificate(&p, &[vec![0], vec![1]]).unwrap();
        assert!(correspondence_distortion(&p.t1, &p.t2, &c).unwrap() <= q("2"));
    }

    #[test]
    fn subdivision() {
        let e = MetricTree::parse("2\n0 1 3").unwrap();
        let s = subdivide_to_unit(&e).unwrap();
        assert_eq!(s.node_count(), 4);
        assert_eq!(s.node_distance(0, 1), q("3"));
        let unit = MetricTree::parse("3\n0 1 1\n1 2 1").unwrap();
        assert_eq!(subdivide_to_unit(&unit).unwrap().to_text(), unit.to_text());
        assert!(subdivide_to_unit(&MetricTree::parse("2\n0 1 1/2").unwrap()).is_err());
    }

    #[test]
    fn transform_preserves_answers() {
        let cases: [&[u64]; 5] = [
            &[1, 1, 1],
            &[1, 2, 3, 1, 2, 3],
            &[1, 1, 2, 1, 2, 2],
            &[1, 1, 1, 1, 1, 4],
            &[2, 3, 4, 3, 3, 3, 1, 5, 3],
        ];
        for y in cases {
            let x = balpart_from_3partition(y).unwrap();
            assert_eq!(
                three_partition_bruteforce(y).is_some(),
                balpart_bruteforce(&x, 12).unwrap().is_some(),
                "{y:?}"
            );
        }
    }

    proptest! {
        #[test]
        fn transform_preserves_answers_random(y in prop::collection::vec(1u64..6, 1..=3usize).prop_flat_map(|v| {
            let m = v.len();
            prop::collection::vec(1u64..6, 3 * m)
        })) {
            let x = balpart_from_3partition(&y).unwrap();
            prop_assert_eq!(
                three_partition_bruteforce(&y).is_some(),
                balpart_bruteforce(&x, 12).unwrap().is_some()
            );
        }

        #[test]
        fn subdivision_preserves_distances(t in arb_tree(8)) {
            let ints: Vec<Edge> = t.edges().iter().map(|e| Edge {
                u: e.u, v: e.v, length: Rational::from_bigint(e.length.numer().clone()),
            }).collect();
            let t = MetricTree::new(t.node_count(), ints).unwrap();
            let s = subdivide_to_unit(&t).unwrap();
            for a in 0..t.node_count() {
                for b in 0..t.node_count() {
                    prop_assert_eq!(s.node_distance(a, b), t.node_distance(a, b));
                }
            }
        }

        #[test]
        fn certificates_have_distortion_two(x in prop::collection::vec(1u64..4, 2..5), m in 1usize..3) {
            prop_assume!(m <= x.len());
            let inst = BalPartInstance::new(x, m).unwrap();
            if let Some(parts) = balpart_bruteforce(&inst, 12).unwrap() {
                let p = build_hard_pair(&inst, &q("7"), &q("1/2")).unwrap();
                let c = yes_certificate(&p, &parts).unwrap();
                prop_assert!(c.covers_vertices(&p.t1, &p.t2));
                prop_assert!(correspondence_distortion(&p.t1, &p.t2, &c).unwrap() <= q("2"));
            }
        }
    }
}
