//! Exact maximum-leaf spanning trees.
//!
//! [`exact_mlst`] is a branch-and-bound over edges (include / exclude) with a
//! partial forest as state. [`enumerate_spanning_trees`] is an independent
//! brute-force enumerator for cross-checking on small graphs, and
//! [`greedy_leafy`] is the heuristic used to seed the search and as a
//! fallback on large inputs.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::graph::{Edge, Graph, Vertex};
use crate::tree::SpanningTree;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("graph is not connected")]
    NotConnected,
    #[error("graph needs at least two vertices")]
    TooFewVertices,
    #[error("more than {0} spanning trees")]
    CapExceeded(usize),
}

/// Default node limit of [`exact_mlst`].
pub const DEFAULT_NODE_BUDGET: u64 = 50_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolverConfig {
    pub node_budget: u64,
    /// Disable to enumerate every spanning tree (used to test the bound).
    pub pruning: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            node_budget: DEFAULT_NODE_BUDGET,
            pruning: true,
        }
    }
}

impl SolverConfig {
    pub fn with_budget(node_budget: u64) -> Self {
        SolverConfig {
            node_budget,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone)]
pub struct ExactResult {
    pub u_value: usize,
    pub witness: SpanningTree,
    pub nodes_explored: u64,
    pub time: Duration,
    /// False when the node budget ran out; `u_value` is then only a lower bound.
    pub optimal: bool,
}

impl ExactResult {
    pub fn is_lower_bound(&self) -> bool {
        !self.optimal
    }
}

/// Index-based copy of a graph, edges sorted by `(min id, max id)`.
struct Compact {
    ids: Vec<Vertex>,
    edges: Vec<(usize, usize)>,
    incident: Vec<Vec<(usize, usize)>>,
}

impl Compact {
    fn new(g: &Graph) -> Self {
        let ids: Vec<Vertex> = g.vertices().collect();
        let index: BTreeMap<Vertex, usize> = ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let edges: Vec<(usize, usize)> = g.edges().map(|e| (index[&e.lo()], index[&e.hi()])).collect();
        let mut incident = vec![Vec::new(); ids.len()];
        for (k, &(a, b)) in edges.iter().enumerate() {
            incident[a].push((b, k));
            incident[b].push((a, k));
        }
        Compact { ids, edges, incident }
    }

    fn n(&self) -> usize {
        self.ids.len()
    }

    fn edge(&self, k: usize) -> Edge {
        let (a, b) = self.edges[k];
        Edge::new(self.ids[a], self.ids[b])
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Status {
    Open,
    In,
    Out,
}

struct Search<'a> {
    c: &'a Compact,
    cfg: SolverConfig,
    status: Vec<Status>,
    in_deg: Vec<usize>,
    in_count: usize,
    parent: Vec<usize>,
    size: Vec<usize>,
    history: Vec<(usize, usize)>,
    best: usize,
    best_edges: Vec<usize>,
    nodes: u64,
    aborted: bool,
    // scratch for the articulation-point pass
    disc: Vec<usize>,
    low: Vec<usize>,
    cut: Vec<bool>,
}

impl<'a> Search<'a> {
    fn find(&self, mut v: usize) -> usize {
        while self.parent[v] != v {
            v = self.parent[v];
        }
        v
    }

    fn union(&mut self, a: usize, b: usize) {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        self.history.push((rb, ra));
    }

    fn undo_union(&mut self) {
        let (rb, ra) = self.history.pop().expect("matching union");
        self.parent[rb] = rb;
        self.size[ra] -= self.size[rb];
    }

    /// Whether `a` still reaches `b` through non-excluded edges other than `skip`.
    fn connected_without(&self, a: usize, b: usize, skip: usize) -> bool {
        let mut seen = vec![false; self.c.n()];
        let mut stack = vec![a];
        seen[a] = true;
        while let Some(x) = stack.pop() {
            if x == b {
                return true;
            }
            for &(y, k) in &self.c.incident[x] {
                if k != skip && self.status[k] != Status::Out && !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        false
    }

    /// Marks cut vertices of the graph of non-excluded edges in `self.cut`.
    fn mark_cut_vertices(&mut self) {
        let n = self.c.n();
        self.disc.iter_mut().for_each(|d| *d = usize::MAX);
        self.cut.iter_mut().for_each(|c| *c = false);
        let mut time = 0;
        let mut stack: Vec<(usize, usize, usize)> = vec![(0, usize::MAX, 0)];
        self.disc[0] = time;
        self.low[0] = time;
        time += 1;
        let mut root_children = 0;
        while let Some(top) = stack.last_mut() {
            let (v, via, i) = *top;
            if i < self.c.incident[v].len() {
                top.2 += 1;
                let (w, k) = self.c.incident[v][i];
                if self.status[k] == Status::Out || k == via {
                    continue;
                }
                if self.disc[w] == usize::MAX {
                    self.disc[w] = time;
                    self.low[w] = time;
                    time += 1;
                    stack.push((w, k, 0));
                } else {
                    self.low[v] = self.low[v].min(self.disc[w]);
                }
            } else {
                stack.pop();
                if let Some(&(p, _, _)) = stack.last() {
                    self.low[p] = self.low[p].min(self.low[v]);
                    if self.low[v] >= self.disc[p] {
                        if p == 0 {
                            root_children += 1;
                        } else {
                            self.cut[p] = true;
                        }
                    }
                }
            }
        }
        if root_children >= 2 {
            self.cut[0] = true;
        }
        debug_assert!(self.disc.iter().take(n).all(|&d| d != usize::MAX));
    }

    /// Leaves any completion can have: vertices not yet forced internal,
    /// less one per two-vertex fragment of the partial forest.
    fn upper_bound(&mut self) -> usize {
        let n = self.c.n();
        self.mark_cut_vertices();
        let forced = |s: &Self, v: usize| s.in_deg[v] >= 2 || s.cut[v];
        let mut free = (0..n).filter(|&v| !forced(self, v)).count();
        for (k, &(a, b)) in self.c.edges.iter().enumerate() {
            if self.status[k] == Status::In
                && self.in_deg[a] == 1
                && self.in_deg[b] == 1
                && !forced(self, a)
                && !forced(self, b)
            {
                free -= 1;
            }
        }
        free.min(n - 1)
    }

    fn record(&mut self) {
        let leaves = self.in_deg.iter().filter(|&&d| d == 1).count();
        if leaves > self.best {
            self.best = leaves;
            self.best_edges = (0..self.c.edges.len()).filter(|&k| self.status[k] == Status::In).collect();
        }
    }

    fn run(&mut self, pos: usize) {
        if self.aborted {
            return;
        }
        self.nodes += 1;
        if self.nodes > self.cfg.node_budget {
            self.aborted = true;
            return;
        }
        if self.in_count + 1 == self.c.n() {
            self.record();
            return;
        }
        if self.cfg.pruning && self.upper_bound() <= self.best {
            return;
        }
        let Some(k) = (pos..self.c.edges.len()).find(|&k| self.status[k] == Status::Open) else {
            return;
        };
        let (a, b) = self.c.edges[k];
        if self.find(a) == self.find(b) {
            self.status[k] = Status::Out;
            self.run(k + 1);
            self.status[k] = Status::Open;
            return;
        }

        self.status[k] = Status::In;
        self.in_deg[a] += 1;
        self.in_deg[b] += 1;
        self.in_count += 1;
        self.union(a, b);
        self.run(k + 1);
        self.undo_union();
        self.in_count -= 1;
        self.in_deg[a] -= 1;
        self.in_deg[b] -= 1;

        if self.connected_without(a, b, k) {
            self.status[k] = Status::Out;
            self.run(k + 1);
        }
        self.status[k] = Status::Open;
    }
}

/// Maximum number of leaves over all spanning trees of `g`.
pub fn exact_mlst(g: &Graph, cfg: SolverConfig) -> Result<ExactResult, ExactError> {
    let start = Instant::now();
    if g.vertex_count() < 2 {
        return Err(ExactError::TooFewVertices);
    }
    let seed = greedy_leafy(g)?;
    let host = seed.host().clone();
    let c = Compact::new(g);
    let n = c.n();
    if n == 2 {
        return Ok(ExactResult {
            u_value: 2,
            witness: seed,
            nodes_explored: 1,
            time: start.elapsed(),
            optimal: true,
        });
    }
    let mut s = Search {
        c: &c,
        cfg,
        status: vec![Status::Open; c.edges.len()],
        in_deg: vec![0; n],
        in_count: 0,
        parent: (0..n).collect(),
        size: vec![1; n],
        history: Vec::new(),
        best: 0,
        best_edges: Vec::new(),
        nodes: 0,
        aborted: false,
        disc: vec![usize::MAX; n],
        low: vec![0; n],
        cut: vec![false; n],
    };
    if cfg.pruning {
        // the greedy tree is a valid incumbent; ties keep the searched witness
        s.best = seed.leaf_count().saturating_sub(1);
    }
    s.run(0);
    let (u_value, witness) = if s.best_edges.is_empty() {
        (seed.leaf_count(), seed)
    } else {
        let edges: Vec<Edge> = s.best_edges.iter().map(|&k| c.edge(k)).collect();
        let tree = SpanningTree::new(host, edges).expect("search produces spanning trees");
        (tree.leaf_count(), tree)
    };
    Ok(ExactResult {
        u_value,
        witness,
        nodes_explored: s.nodes,
        time: start.elapsed(),
        optimal: !s.aborted,
    })
}

/// Leafy heuristic: start at a vertex of maximum degree and repeatedly
/// expand the tree vertex with the most neighbours outside the tree.
pub fn greedy_leafy(g: &Graph) -> Result<SpanningTree, ExactError> {
    if !g.is_connected() {
        return Err(ExactError::NotConnected);
    }
    let host = Arc::new(g.clone());
    let root = g
        .vertices()
        .max_by_key(|&v| (g.degree(v), std::cmp::Reverse(v)))
        .expect("nonempty");
    let mut in_tree = BTreeSet::from([root]);
    let mut edges = Vec::new();
    while in_tree.len() < g.vertex_count() {
        let (_, x) = in_tree
            .iter()
            .map(|&x| (g.neighbors(x).filter(|y| !in_tree.contains(y)).count(), x))
            .max_by_key(|&(gain, x)| (gain, std::cmp::Reverse(x)))
            .expect("tree is nonempty");
        let fresh: Vec<Vertex> = g.neighbors(x).filter(|y| !in_tree.contains(y)).collect();
        for y in fresh {
            in_tree.insert(y);
            edges.push(Edge::new(x, y));
        }
    }
    Ok(SpanningTree::new(host, edges).expect("greedy builds a spanning tree"))
}

/// Every spanning tree of `g` exactly once, in include-first edge order.
/// Yields `Err(CapExceeded)` once if there are more than `cap` trees.
pub fn enumerate_spanning_trees(g: &Graph, cap: usize) -> Result<SpanningTrees, ExactError> {
    if !g.is_connected() {
        return Err(ExactError::NotConnected);
    }
    let c = Compact::new(g);
    let n = c.n();
    Ok(SpanningTrees {
        host: Arc::new(g.clone()),
        stack: vec![Frame {
            next: 0,
            chosen: Vec::new(),
            label: (0..n).collect(),
        }],
        c,
        cap,
        yielded: 0,
        done: false,
    })
}

struct Frame {
    next: usize,
    chosen: Vec<usize>,
    label: Vec<usize>,
}

pub struct SpanningTrees {
    host: Arc<Graph>,
    c: Compact,
    stack: Vec<Frame>,
    cap: usize,
    yielded: usize,
    done: bool,
}

impl Iterator for SpanningTrees {
    type Item = Result<SpanningTree, ExactError>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        let need = self.c.n() - 1;
        while let Some(f) = self.stack.pop() {
            if f.chosen.len() == need {
                if self.yielded == self.cap {
                    self.done = true;
                    return Some(Err(ExactError::CapExceeded(self.cap)));
                }
                self.yielded += 1;
                let edges: Vec<Edge> = f.chosen.iter().map(|&k| self.c.edge(k)).collect();
                return Some(Ok(SpanningTree::new(self.host.clone(), edges).expect("enumerated tree")));
            }
            let m = self.c.edges.len();
            if f.next == m || m - f.next < need - f.chosen.len() {
                continue;
            }
            let k = f.next;
            let (a, b) = self.c.edges[k];
            self.stack.push(Frame {
                next: k + 1,
                chosen: f.chosen.clone(),
                label: f.label.clone(),
            });
            let (la, lb) = (f.label[a], f.label[b]);
            if la != lb {
                let mut chosen = f.chosen;
                chosen.push(k);
                let label = f.label.into_iter().map(|l| if l == lb { la } else { l }).collect();
                self.stack.push(Frame {
                    next: k + 1,
                    chosen,
                    label,
                });
            }
        }
        self.done = true;
        None
    }
}

/// Largest leaf count over all enumerated trees.
pub fn brute_force_max_leaves(g: &Graph, cap: usize) -> Result<usize, ExactError> {
    let mut best = 0;
    for t in enumerate_spanning_trees(g, cap)? {
        best = best.max(t?.leaf_count());
    }
    Ok(best)
}
