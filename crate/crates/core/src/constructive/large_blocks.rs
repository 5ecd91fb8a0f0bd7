//! Deleting edges until no block has more interior than boundary vertices.

use std::collections::{BTreeSet, HashSet};

use thiserror::Error;

use crate::blocks::decompose_blocks;
use crate::graph::{Edge, Graph, GraphError, Vertex};

use super::ConstructError;

/// Node limit of the fallback search; reaching it reports `SearchExhausted`.
const SEARCH_LIMIT: usize = 200_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RemovalViolation {
    #[error("graph minus the removed edges is disconnected")]
    Disconnected,
    #[error("block on {0:?} is still large")]
    LargeBlock(BTreeSet<Vertex>),
    #[error("adjacent vertices {0} and {1} have degree 2 only after removal")]
    NewDegreeTwoPair(Vertex, Vertex),
    #[error("removed edge {0} is not an edge of the graph")]
    NotAnEdge(Edge),
}

/// First adjacent pair of degree-2 vertices of `h` that did not both have
/// degree 2 in `g`.
fn new_degree_two_pair(g: &Graph, h: &Graph) -> Option<(Vertex, Vertex)> {
    h.edges()
        .find(|e| h.degree(e.lo()) == 2 && h.degree(e.hi()) == 2 && (g.degree(e.lo()) != 2 || g.degree(e.hi()) != 2))
        .map(|e| (e.lo(), e.hi()))
}

/// Checks the three postconditions of a removal set.
pub fn check_large_block_removal(g: &Graph, f: &BTreeSet<Edge>) -> Result<(), RemovalViolation> {
    if let Some(&e) = f.iter().find(|&&e| !g.contains_edge(e)) {
        return Err(RemovalViolation::NotAnEdge(e));
    }
    let h = g.without_edges(f).map_err(|_| RemovalViolation::Disconnected)?;
    let dec = decompose_blocks(&h).map_err(|_| RemovalViolation::Disconnected)?;
    if let Some(b) = dec.large_blocks().next() {
        return Err(RemovalViolation::LargeBlock(b.vertices.clone()));
    }
    if let Some((x, y)) = new_degree_two_pair(g, &h) {
        return Err(RemovalViolation::NewDegreeTwoPair(x, y));
    }
    Ok(())
}

/// An edge set `F` such that `g - F` is connected, has no large block, and
/// creates no new adjacent pair of degree-2 vertices.
///
/// Every spanning tree of a graph with more than two vertices is free of
/// large blocks, so the search first looks for a spanning tree meeting the
/// degree-2 condition (edge exchanges from several starting trees), then
/// puts removed edges back one at a time while all three conditions still
/// hold. If no tree is found, a depth-first search over removal sets takes
/// over.
pub fn remove_large_blocks(g: &Graph) -> Result<BTreeSet<Edge>, ConstructError> {
    if g.vertex_count() <= 2 {
        return Err(ConstructError::TooFewVertices);
    }
    if !g.is_connected() {
        return Err(ConstructError::NotConnected);
    }
    if !decompose_blocks(g)?.has_large_block() {
        return Ok(BTreeSet::new());
    }
    if let Some(f) = TreeSearch::new(g).run() {
        return Ok(shrink(g, f));
    }
    let mut search = Search {
        g,
        seen: HashSet::new(),
        nodes: 0,
    };
    search.run(BTreeSet::new())?.ok_or(ConstructError::SearchExhausted)
}

/// Returns removed edges to the graph, lowest first, while the result stays valid.
fn shrink(g: &Graph, mut f: BTreeSet<Edge>) -> BTreeSet<Edge> {
    loop {
        let before = f.len();
        for e in f.clone() {
            f.remove(&e);
            if check_large_block_removal(g, &f).is_err() {
                f.insert(e);
            }
        }
        if f.len() == before {
            return f;
        }
    }
}

/// Spanning trees by index; `bad` counts tree edges whose ends both have
/// tree degree 2 without both having degree 2 in the graph.
struct TreeSearch {
    ids: Vec<Vertex>,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<(usize, usize)>>,
    gdeg: Vec<usize>,
}

impl TreeSearch {
    fn new(g: &Graph) -> Self {
        let ids: Vec<Vertex> = g.vertices().collect();
        let idx = |v: Vertex| ids.binary_search(&v).expect("vertex of g");
        let edges: Vec<(usize, usize)> = g.edges().map(|e| (idx(e.lo()), idx(e.hi()))).collect();
        let mut adj = vec![Vec::new(); ids.len()];
        for (i, &(a, b)) in edges.iter().enumerate() {
            adj[a].push((b, i));
            adj[b].push((a, i));
        }
        let gdeg = adj.iter().map(Vec::len).collect();
        TreeSearch { ids, edges, adj, gdeg }
    }

    fn bad(&self, in_tree: &[bool], tdeg: &[usize]) -> usize {
        self.edges
            .iter()
            .zip(in_tree)
            .filter(|&(&(a, b), &t)| {
                t && tdeg[a] == 2 && tdeg[b] == 2 && !(self.gdeg[a] == 2 && self.gdeg[b] == 2)
            })
            .count()
    }

    /// Breadth-first tree from `root`, as an edge mask.
    fn bfs(&self, root: usize) -> Vec<bool> {
        let mut in_tree = vec![false; self.edges.len()];
        let mut seen = vec![false; self.ids.len()];
        seen[root] = true;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(x) = queue.pop_front() {
            for &(y, e) in &self.adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    in_tree[e] = true;
                    queue.push_back(y);
                }
            }
        }
        in_tree
    }

    /// Edge ids on the tree path between `from` and `to`.
    fn path(&self, in_tree: &[bool], from: usize, to: usize) -> Vec<usize> {
        let mut via = vec![usize::MAX; self.ids.len()];
        let mut seen = vec![false; self.ids.len()];
        seen[from] = true;
        let mut stack = vec![from];
        while let Some(x) = stack.pop() {
            for &(y, e) in &self.adj[x] {
                if in_tree[e] && !seen[y] {
                    seen[y] = true;
                    via[y] = e;
                    stack.push(y);
                }
            }
        }
        let mut out = Vec::new();
        let mut at = to;
        while at != from {
            let e = via[at];
            out.push(e);
            let (a, b) = self.edges[e];
            at = if a == at { b } else { a };
        }
        out
    }

    /// Steepest descent over edge exchanges from one starting tree.
    fn descend(&self, mut in_tree: Vec<bool>) -> Option<Vec<bool>> {
        let mut tdeg = vec![0; self.ids.len()];
        for (&(a, b), _) in self.edges.iter().zip(&in_tree).filter(|(_, &t)| t) {
            tdeg[a] += 1;
            tdeg[b] += 1;
        }
        let mut bad = self.bad(&in_tree, &tdeg);
        while bad > 0 {
            let mut best: Option<(usize, usize, usize)> = None;
            let outside: Vec<usize> = (0..self.edges.len()).filter(|&e| !in_tree[e]).collect();
            for add in outside {
                let (x, z) = self.edges[add];
                for drop in self.path(&in_tree, x, z) {
                    let (p, q) = self.edges[drop];
                    in_tree[add] = true;
                    in_tree[drop] = false;
                    tdeg[x] += 1;
                    tdeg[z] += 1;
                    tdeg[p] -= 1;
                    tdeg[q] -= 1;
                    let score = self.bad(&in_tree, &tdeg);
                    tdeg[p] += 1;
                    tdeg[q] += 1;
                    tdeg[x] -= 1;
                    tdeg[z] -= 1;
                    in_tree[add] = false;
                    in_tree[drop] = true;
                    if best.is_none_or(|(s, _, _)| score < s) {
                        best = Some((score, add, drop));
                    }
                }
            }
            match best {
                Some((score, add, drop)) if score < bad => {
                    let ((x, z), (p, q)) = (self.edges[add], self.edges[drop]);
                    in_tree[add] = true;
                    in_tree[drop] = false;
                    tdeg[x] += 1;
                    tdeg[z] += 1;
                    tdeg[p] -= 1;
                    tdeg[q] -= 1;
                    bad = score;
                }
                _ => return None,
            }
        }
        Some(in_tree)
    }

    /// Removal set of the first tree found, starting from breadth-first
    /// trees rooted at high-degree vertices first.
    fn run(&self) -> Option<BTreeSet<Edge>> {
        let mut roots: Vec<usize> = (0..self.ids.len()).collect();
        roots.sort_by_key(|&v| (std::cmp::Reverse(self.gdeg[v]), v));
        roots.into_iter().find_map(|r| self.descend(self.bfs(r))).map(|in_tree| {
            self.edges
                .iter()
                .zip(&in_tree)
                .filter(|(_, &t)| !t)
                .map(|(&(a, b), _)| Edge::new(self.ids[a], self.ids[b]))
                .collect()
        })
    }
}

struct Search<'a> {
    g: &'a Graph,
    seen: HashSet<BTreeSet<Edge>>,
    nodes: usize,
}

impl Search<'_> {
    fn run(&mut self, f: BTreeSet<Edge>) -> Result<Option<BTreeSet<Edge>>, GraphError> {
        self.nodes += 1;
        if self.nodes > SEARCH_LIMIT {
            return Ok(None);
        }
        let h = self.g.without_edges(&f)?;
        let dec = decompose_blocks(&h)?;
        let pair = new_degree_two_pair(self.g, &h);
        let largest = dec
            .large_blocks()
            .max_by_key(|b| (b.interior.len(), std::cmp::Reverse(b.edges[0])));
        if pair.is_none() && largest.is_none() {
            return Ok(Some(f));
        }

        let open: Vec<Edge> = h.edges().filter(|e| !dec.bridges.contains(e)).collect();
        let mut order: Vec<(u8, Edge)> = Vec::with_capacity(open.len());
        for &e in &open {
            let near_pair = pair.is_some_and(|(x, y)| e.contains(x) || e.contains(y));
            let in_largest = largest.is_some_and(|b| b.edges.binary_search(&e).is_ok());
            let keeps_three = h.degree(e.lo()) > 3 && h.degree(e.hi()) > 3;
            let rank = match (near_pair, in_largest, keeps_three) {
                (true, _, _) => 0,
                (false, true, true) => 1,
                (false, true, false) => 2,
                (false, false, _) => 3,
            };
            order.push((rank, e));
        }
        order.sort();

        for (_, e) in order {
            let mut next = f.clone();
            next.insert(e);
            if !self.seen.insert(next.clone()) {
                continue;
            }
            if let Some(found) = self.run(next)? {
                return Ok(Some(found));
            }
            if self.nodes > SEARCH_LIMIT {
                break;
            }
        }
        Ok(None)
    }
}
