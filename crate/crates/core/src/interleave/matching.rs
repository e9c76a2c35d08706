//! Maximum-cardinality bipartite matching (Hopcroft-Karp).

use std::collections::VecDeque;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matching {
    /// Partner of each left vertex.
    pub left: Vec<Option<usize>>,
    /// Partner of each right vertex.
    pub right: Vec<Option<usize>>,
    pub size: usize,
}

impl Matching {
    pub fn is_perfect(&self) -> bool {
        self.size == self.left.len() && self.size == self.right.len()
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.left
            .iter()
            .enumerate()
            .filter_map(|(u, v)| v.map(|v| (u, v)))
    }
}

/// Maximum matching in the bipartite graph `left_size x right_size` with the
/// given edges. Neighbors are scanned in increasing order, so the result is
/// deterministic.
pub fn hopcroft_karp(left_size: usize, right_size: usize, edges: &[(usize, usize)]) -> Matching {
    let mut adj = vec![Vec::new(); left_size];
    for &(u, v) in edges {
        assert!(u < left_size && v < right_size, "edge ({u}, {v}) out of range");
        adj[u].push(v);
    }
    for a in &mut adj {
        a.sort_unstable();
        a.dedup();
    }
    let mut hk = Search {
        adj,
        left: vec![None; left_size],
        right: vec![None; right_size],
        dist: vec![0; left_size],
    };
    let mut size = 0;
    while hk.layer() {
        let mut cursor = vec![0usize; left_size];
        for u in 0..left_size {
            if hk.left[u].is_none() && hk.augment(u, &mut cursor) {
                size += 1;
            }
        }
    }
    Matching {
        left: hk.left,
        right: hk.right,
        size,
    }
}

const INF: usize = usize::MAX;

struct Search {
    adj: Vec<Vec<usize>>,
    left: Vec<Option<usize>>,
    right: Vec<Option<usize>>,
    dist: Vec<usize>,
}

impl Search {
    // BFS from free left vertices; true if some free right vertex is reachable
    fn layer(&mut self) -> bool {
        let mut queue = VecDeque::new();
        for u in 0..self.left.len() {
            if self.left[u].is_none() {
                self.dist[u] = 0;
                queue.push_back(u);
            } else {
                self.dist[u] = INF;
            }
        }
        let mut found = false;
        while let Some(u) = queue.pop_front() {
            for &v in &self.adj[u] {
                match self.right[v] {
                    None => found = true,
                    Some(w) if self.dist[w] == INF => {
                        self.dist[w] = self.dist[u] + 1;
                        queue.push_back(w);
                    }
                    Some(_) => {}
                }
            }
        }
        found
    }

    // DFS along the layered graph; iterative to stay safe on deep paths
    fn augment(&mut self, start: usize, cursor: &mut [usize]) -> bool {
        let mut path: Vec<usize> = vec![start];
        while let Some(&u) = path.last() {
            if cursor[u] == self.adj[u].len() {
                self.dist[u] = INF;
                path.pop();
                continue;
            }
            let v = self.adj[u][cursor[u]];
            match self.right[v] {
                None => {
                    // flip the alternating path ending at free v
                    let mut v = v;
                    while let Some(u) = path.pop() {
                        let next = self.left[u];
                        self.left[u] = Some(v);
                        self.right[v] = Some(u);
                        if let Some(n) = next {
                            v = n;
                        }
                        cursor[u] += 1;
                    }
                    return true;
                }
                Some(w) if self.dist[w] == self.dist[u] + 1 => path.push(w),
                Some(_) => cursor[u] += 1,
            }
        }
        false
    }
}
