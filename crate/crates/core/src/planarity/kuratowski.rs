//! Exhaustive Kuratowski search for small graphs.
//!
//! A graph is non-planar iff it contains a subdivision of K5 or K3,3. This
//! module looks for one directly: choose branch vertices, then try to join
//! every required pair by internally disjoint paths through the remaining
//! vertices. Nothing here shares code with the left-right test.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::graph::SimpleGraph;

pub const DEFAULT_ORACLE_CEILING: usize = 12;
const HARD_CEILING: usize = 32;

/// True iff `graph` contains no subdivision of K5 or K3,3.
pub fn kuratowski_oracle(graph: &SimpleGraph) -> Result<bool> {
    kuratowski_oracle_with_ceiling(graph, DEFAULT_ORACLE_CEILING)
}

pub fn kuratowski_oracle_with_ceiling(graph: &SimpleGraph, ceiling: usize) -> Result<bool> {
    let n = graph.vertex_count();
    if n > ceiling.min(HARD_CEILING) {
        return Err(Error::CeilingExceeded {
            n,
            ceiling: ceiling.min(HARD_CEILING),
            estimate: None,
        });
    }
    let mut adj = vec![0u32; n];
    for (u, v) in graph.edges() {
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
    }

    // Vertices of degree <= 1 lie on no cycle and so in no subdivision.
    let mut active: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    loop {
        let leaves = (0..n)
            .filter(|&v| active & (1 << v) != 0 && (adj[v] & active).count_ones() <= 1)
            .fold(0u32, |acc, v| acc | (1 << v));
        if leaves == 0 {
            break;
        }
        active &= !leaves;
    }
    let adj: Vec<u32> = adj.iter().map(|&a| a & active).collect();

    let mut search = Search {
        adj: &adj,
        failed: HashSet::new(),
    };
    Ok(!(search.has_k5(active) || search.has_k33(active)))
}

struct Search<'a> {
    adj: &'a [u32],
    failed: HashSet<(usize, usize, u32)>,
}

fn bits(mask: u32) -> impl Iterator<Item = usize> {
    (0..32).filter(move |&i| mask & (1 << i) != 0)
}

fn subsets(pool: &[usize], k: usize, mut visit: impl FnMut(&[usize]) -> bool) -> bool {
    fn rec(pool: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if cur.len() == k {
            return visit(cur);
        }
        for i in start..pool.len() {
            if pool.len() - i < k - cur.len() {
                break;
            }
            cur.push(pool[i]);
            if rec(pool, k, i + 1, cur, visit) {
                return true;
            }
            cur.pop();
        }
        false
    }
    rec(pool, k, 0, &mut Vec::with_capacity(k), &mut visit)
}

impl Search<'_> {
    fn has_k5(&mut self, active: u32) -> bool {
        let pool: Vec<usize> = bits(active).filter(|&v| self.adj[v].count_ones() >= 4).collect();
        subsets(&pool, 5, |b| {
            let pairs: Vec<(usize, usize)> = (0..5)
                .flat_map(|i| (i + 1..5).map(move |j| (i, j)))
                .map(|(i, j)| (b[i], b[j]))
                .collect();
            self.linked(b, &pairs, active)
        })
    }

    fn has_k33(&mut self, active: u32) -> bool {
        let pool: Vec<usize> = bits(active).filter(|&v| self.adj[v].count_ones() >= 3).collect();
        subsets(&pool, 6, |b| {
            // b[0] is always on side A; choose its two partners
            for i in 1..6 {
                for j in i + 1..6 {
                    let side_a = [b[0], b[i], b[j]];
                    let side_b: Vec<usize> = b.iter().copied().filter(|v| !side_a.contains(v)).collect();
                    let pairs: Vec<(usize, usize)> = side_a
                        .iter()
                        .flat_map(|&x| side_b.iter().map(move |&y| (x, y)))
                        .collect();
                    if self.linked(b, &pairs, active) {
                        return true;
                    }
                }
            }
            false
        })
    }

    /// Can every pair be joined by internally disjoint paths whose inner
    /// vertices avoid the branch set?
    fn linked(&mut self, branch: &[usize], pairs: &[(usize, usize)], active: u32) -> bool {
        let branch_mask = branch.iter().fold(0u32, |m, &v| m | (1 << v));
        let free = active & !branch_mask;

        // An adjacent pair can always use its direct edge.
        let mut routed: Vec<(usize, usize)> = pairs
            .iter()
            .copied()
            .filter(|&(s, t)| self.adj[s] & (1 << t) == 0)
            .collect();

        // Each branch vertex needs a distinct free neighbor per routed pair.
        for &b in branch {
            let need = routed.iter().filter(|&&(s, t)| s == b || t == b).count() as u32;
            if (self.adj[b] & free).count_ones() < need {
                return false;
            }
        }

        // Most constrained pairs first.
        routed.sort_by_key(|&(s, t)| (self.adj[s] & free).count_ones().min((self.adj[t] & free).count_ones()));
        self.failed.clear();
        self.route(&routed, 0, free, None)
    }

    /// Routes pairs[idx..]; `cur` is the tip of the partial path of
    /// pairs[idx], or `None` before it has started.
    fn route(&mut self, pairs: &[(usize, usize)], idx: usize, free: u32, cur: Option<usize>) -> bool {
        if idx == pairs.len() {
            return true;
        }
        let (s, t) = pairs[idx];
        let tip = cur.unwrap_or(s);
        let key = (idx, tip, free);
        if self.failed.contains(&key) {
            return false;
        }
        if cur.is_some() && self.adj[tip] & (1 << t) != 0 && self.route(pairs, idx + 1, free, None) {
            return true;
        }
        let mut options = self.adj[tip] & free;
        while options != 0 {
            let w = options.trailing_zeros() as usize;
            options &= options - 1;
            if self.route(pairs, idx, free & !(1 << w), Some(w)) {
                return true;
            }
        }
        self.failed.insert(key);
        false
    }
}
