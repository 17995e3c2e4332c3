//! Left-right planarity test with embedding extraction.
//!
//! Follows Brandes' formulation of the de Fraysseix-Rosenstiehl criterion:
//! a DFS orientation, a nesting order on outgoing edges, a conflict-pair
//! stack for the constraint check, and a final DFS that places every back
//! edge on its resolved side.

use std::collections::HashMap;

use crate::graph::SimpleGraph;

type EdgeId = usize;

#[derive(Debug, Clone, Copy, Default, PartialEq)]
struct Interval {
    low: Option<EdgeId>,
    high: Option<EdgeId>,
}

impl Interval {
    fn single(e: EdgeId) -> Self {
        Interval {
            low: Some(e),
            high: Some(e),
        }
    }

    fn is_empty(&self) -> bool {
        self.low.is_none() && self.high.is_none()
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
struct ConflictPair {
    left: Interval,
    right: Interval,
}

impl ConflictPair {
    fn swap(&mut self) {
        std::mem::swap(&mut self.left, &mut self.right);
    }
}

/// Per-vertex circular neighbor list with O(1) insertion next to a
/// reference neighbor.
#[derive(Default)]
struct CyclicOrder {
    // neighbor -> (cw, ccw)
    links: HashMap<usize, (usize, usize)>,
    first: Option<usize>,
}

pub(crate) struct LrState<'g> {
    graph: &'g SimpleGraph,
    edges: Vec<(usize, usize)>,
    out: Vec<Vec<EdgeId>>,
    oriented: HashMap<(usize, usize), EdgeId>,
    roots: Vec<usize>,
    height: Vec<Option<usize>>,
    parent_edge: Vec<Option<EdgeId>>,
    lowpt: Vec<usize>,
    lowpt2: Vec<usize>,
    nesting_depth: Vec<i64>,
    reference: Vec<Option<EdgeId>>,
    side: Vec<i64>,
    stack: Vec<ConflictPair>,
    stack_bottom: Vec<usize>,
    lowpt_edge: Vec<Option<EdgeId>>,
    left_ref: Vec<Option<usize>>,
    right_ref: Vec<Option<usize>>,
    order: Vec<CyclicOrder>,
}

impl<'g> LrState<'g> {
    pub(crate) fn new(graph: &'g SimpleGraph) -> Self {
        let n = graph.vertex_count();
        let m = graph.edge_count();
        LrState {
            graph,
            edges: Vec::with_capacity(m),
            out: vec![Vec::new(); n],
            oriented: HashMap::with_capacity(m),
            roots: Vec::new(),
            height: vec![None; n],
            parent_edge: vec![None; n],
            lowpt: Vec::with_capacity(m),
            lowpt2: Vec::with_capacity(m),
            nesting_depth: Vec::with_capacity(m),
            reference: Vec::new(),
            side: Vec::new(),
            stack: Vec::new(),
            stack_bottom: Vec::new(),
            lowpt_edge: Vec::new(),
            left_ref: vec![None; n],
            right_ref: vec![None; n],
            order: Vec::new(),
        }
    }

    /// Runs the test. Returns the rotation system (counter-clockwise) when
    /// the graph is planar.
    pub(crate) fn run(mut self) -> Option<Vec<Vec<usize>>> {
        let n = self.graph.vertex_count();
        let m = self.graph.edge_count();
        if n > 2 && m > 3 * n - 6 {
            return None;
        }

        for v in 0..n {
            if self.height[v].is_none() {
                self.height[v] = Some(0);
                self.roots.push(v);
                self.dfs_orientation(v);
            }
        }

        let m = self.edges.len();
        self.reference = vec![None; m];
        self.side = vec![1; m];
        self.stack_bottom = vec![0; m];
        self.lowpt_edge = vec![None; m];
        self.sort_out_edges();

        for i in 0..self.roots.len() {
            let r = self.roots[i];
            if !self.dfs_testing(r) {
                return None;
            }
        }

        for e in 0..m {
            let s = self.sign(e);
            self.nesting_depth[e] *= s;
        }
        self.sort_out_edges();

        self.order = (0..n).map(|_| CyclicOrder::default()).collect();
        for v in 0..n {
            let mut prev = None;
            for i in 0..self.out[v].len() {
                let w = self.edges[self.out[v][i]].1;
                self.add_half_edge_cw(v, w, prev);
                prev = Some(w);
            }
        }
        for i in 0..self.roots.len() {
            let r = self.roots[i];
            self.dfs_embedding(r);
        }

        // The list is kept in the clockwise sense of the classical
        // formulation; read it backwards to get counter-clockwise order.
        let rotation = self
            .order
            .iter()
            .map(|ord| {
                let mut rot = Vec::new();
                if let Some(first) = ord.first {
                    let mut cur = first;
                    loop {
                        rot.push(cur);
                        cur = ord.links[&cur].1;
                        if cur == first {
                            break;
                        }
                    }
                }
                rot
            })
            .collect();
        Some(rotation)
    }

    fn sort_out_edges(&mut self) {
        for v in 0..self.out.len() {
            let depth = &self.nesting_depth;
            self.out[v].sort_by_key(|&e| depth[e]);
        }
    }

    fn dfs_orientation(&mut self, v: usize) {
        let parent = self.parent_edge[v];
        let hv = self.height[v].expect("visited");
        for i in 0..self.graph.degree(v) {
            let w = self.graph.neighbors(v)[i];
            let key = (v.min(w), v.max(w));
            if self.oriented.contains_key(&key) {
                continue;
            }
            let vw = self.edges.len();
            self.edges.push((v, w));
            self.oriented.insert(key, vw);
            self.out[v].push(vw);
            self.lowpt.push(hv);
            self.lowpt2.push(hv);
            self.nesting_depth.push(0);

            match self.height[w] {
                None => {
                    self.parent_edge[w] = Some(vw);
                    self.height[w] = Some(hv + 1);
                    self.dfs_orientation(w);
                }
                Some(hw) => self.lowpt[vw] = hw,
            }

            self.nesting_depth[vw] = 2 * self.lowpt[vw] as i64;
            if self.lowpt2[vw] < hv {
                // chordal
                self.nesting_depth[vw] += 1;
            }

            if let Some(e) = parent {
                if self.lowpt[vw] < self.lowpt[e] {
                    self.lowpt2[e] = self.lowpt[e].min(self.lowpt2[vw]);
                    self.lowpt[e] = self.lowpt[vw];
                } else if self.lowpt[vw] > self.lowpt[e] {
                    self.lowpt2[e] = self.lowpt2[e].min(self.lowpt[vw]);
                } else {
                    self.lowpt2[e] = self.lowpt2[e].min(self.lowpt2[vw]);
                }
            }
        }
    }

    fn conflicting(&self, interval: &Interval, b: EdgeId) -> bool {
        match interval.high {
            Some(h) => self.lowpt[h] > self.lowpt[b],
            None => false,
        }
    }

    fn lowest(&self, p: &ConflictPair) -> Option<usize> {
        match (p.left.low, p.right.low) {
            (None, None) => None,
            (None, Some(r)) => Some(self.lowpt[r]),
            (Some(l), None) => Some(self.lowpt[l]),
            (Some(l), Some(r)) => Some(self.lowpt[l].min(self.lowpt[r])),
        }
    }

    fn dfs_testing(&mut self, v: usize) -> bool {
        let parent = self.parent_edge[v];
        let hv = self.height[v].expect("visited");
        for i in 0..self.out[v].len() {
            let ei = self.out[v][i];
            let w = self.edges[ei].1;
            self.stack_bottom[ei] = self.stack.len();
            if self.parent_edge[w] == Some(ei) {
                if !self.dfs_testing(w) {
                    return false;
                }
            } else {
                self.lowpt_edge[ei] = Some(ei);
                self.stack.push(ConflictPair {
                    left: Interval::default(),
                    right: Interval::single(ei),
                });
            }

            if self.lowpt[ei] < hv {
                let e = parent.expect("return edge below the root");
                if i == 0 {
                    self.lowpt_edge[e] = self.lowpt_edge[ei];
                } else if !self.add_constraints(ei, e) {
                    return false;
                }
            }
        }
        if let Some(e) = parent {
            self.remove_back_edges(e);
        }
        true
    }

    fn add_constraints(&mut self, ei: EdgeId, e: EdgeId) -> bool {
        let mut p = ConflictPair::default();
        // merge return edges of ei into p.right
        while let Some(mut q) = self.stack.pop() {
            if !q.left.is_empty() {
                q.swap();
            }
            if !q.left.is_empty() {
                return false;
            }
            let q_low = q.right.low.expect("non-empty right interval");
            if self.lowpt[q_low] > self.lowpt[e] {
                if p.right.is_empty() {
                    p.right = q.right;
                } else if let Some(pl) = p.right.low {
                    self.reference[pl] = q.right.high;
                }
                p.right.low = q.right.low;
            } else {
                self.reference[q_low] = self.lowpt_edge[e];
            }
            if self.stack.len() == self.stack_bottom[ei] {
                break;
            }
        }

        // merge conflicting return edges of earlier siblings into p.left
        while let Some(top) = self.stack.last() {
            if !(self.conflicting(&top.left, ei) || self.conflicting(&top.right, ei)) {
                break;
            }
            let mut q = self.stack.pop().expect("non-empty");
            if self.conflicting(&q.right, ei) {
                q.swap();
            }
            if self.conflicting(&q.right, ei) {
                return false;
            }
            if let Some(pl) = p.right.low {
                self.reference[pl] = q.right.high;
            }
            if q.right.low.is_some() {
                p.right.low = q.right.low;
            }
            if p.left.is_empty() {
                p.left = q.left;
            } else if let Some(pl) = p.left.low {
                self.reference[pl] = q.left.high;
            }
            p.left.low = q.left.low;
        }

        if !(p.left.is_empty() && p.right.is_empty()) {
            self.stack.push(p);
        }
        true
    }

    fn remove_back_edges(&mut self, e: EdgeId) {
        let u = self.edges[e].0;
        let hu = self.height[u].expect("visited");

        // drop whole conflict pairs returning to u
        while let Some(top) = self.stack.last() {
            match self.lowest(top) {
                Some(l) if l != hu => break,
                _ => {}
            }
            let p = self.stack.pop().expect("non-empty");
            if let Some(l) = p.left.low {
                self.side[l] = -1;
            }
        }

        if let Some(mut p) = self.stack.pop() {
            // trim left interval
            while let Some(h) = p.left.high {
                if self.edges[h].1 != u {
                    break;
                }
                p.left.high = self.reference[h];
            }
            if p.left.high.is_none() {
                if let Some(l) = p.left.low {
                    self.reference[l] = p.right.low;
                    self.side[l] = -1;
                    p.left.low = None;
                }
            }
            // trim right interval
            while let Some(h) = p.right.high {
                if self.edges[h].1 != u {
                    break;
                }
                p.right.high = self.reference[h];
            }
            if p.right.high.is_none() {
                if let Some(r) = p.right.low {
                    self.reference[r] = p.left.low;
                    self.side[r] = -1;
                    p.right.low = None;
                }
            }
            self.stack.push(p);
        }

        // side of e is the side of a highest return edge
        if self.lowpt[e] < hu {
            if let Some(top) = self.stack.last() {
                let (hl, hr) = (top.left.high, top.right.high);
                self.reference[e] = match (hl, hr) {
                    (Some(l), None) => Some(l),
                    (Some(l), Some(r)) if self.lowpt[l] > self.lowpt[r] => Some(l),
                    _ => hr,
                };
            }
        }
    }

    fn sign(&mut self, e: EdgeId) -> i64 {
        let mut chain = vec![e];
        while let Some(r) = self.reference[*chain.last().expect("non-empty")] {
            chain.push(r);
        }
        // chain ends at an edge with a resolved side; fold back to e
        let mut acc = self.side[chain.pop().expect("non-empty")];
        while let Some(x) = chain.pop() {
            self.side[x] *= acc;
            self.reference[x] = None;
            acc = self.side[x];
        }
        self.side[e]
    }

    fn add_half_edge_cw(&mut self, start: usize, end: usize, reference: Option<usize>) {
        let ord = &mut self.order[start];
        match reference {
            None => {
                ord.links.insert(end, (end, end));
                ord.first = Some(end);
            }
            Some(r) => {
                let cw_ref = ord.links[&r].0;
                ord.links.get_mut(&r).expect("reference").0 = end;
                ord.links.insert(end, (cw_ref, r));
                ord.links.get_mut(&cw_ref).expect("cw reference").1 = end;
            }
        }
    }

    fn add_half_edge_ccw(&mut self, start: usize, end: usize, reference: Option<usize>) {
        match reference {
            None => self.add_half_edge_cw(start, end, None),
            Some(r) => {
                let ccw_ref = self.order[start].links[&r].1;
                self.add_half_edge_cw(start, end, Some(ccw_ref));
                if self.order[start].first == Some(r) {
                    self.order[start].first = Some(end);
                }
            }
        }
    }

    fn add_half_edge_first(&mut self, start: usize, end: usize) {
        let reference = self.order[start].first;
        self.add_half_edge_ccw(start, end, reference);
    }

    fn dfs_embedding(&mut self, v: usize) {
        for i in 0..self.out[v].len() {
            let ei = self.out[v][i];
            let w = self.edges[ei].1;
            if self.parent_edge[w] == Some(ei) {
                self.add_half_edge_first(w, v);
                self.left_ref[v] = Some(w);
                self.right_ref[v] = Some(w);
                self.dfs_embedding(w);
            } else if self.side[ei] == 1 {
                let r = self.right_ref[w];
                self.add_half_edge_cw(w, v, r);
            } else {
                let r = self.left_ref[w];
                self.add_half_edge_ccw(w, v, r);
                self.left_ref[w] = Some(v);
            }
        }
    }
}
