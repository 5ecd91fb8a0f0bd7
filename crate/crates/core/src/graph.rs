//! Simple undirected graphs with stable integer vertex ids.
//!
//! A [`Graph`] is immutable once built. Every derived graph (edge deletion,
//! vertex deletion, induced subgraphs, gluing, contraction) is a new value and
//! keeps the ids of the vertices it inherits.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use thiserror::Error;

/// Vertex identifier. Ids are arbitrary non-negative integers and never
/// renumbered implicitly.
pub type Vertex = usize;

/// Unordered vertex pair, stored with the smaller id first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    lo: Vertex,
    hi: Vertex,
}

impl Edge {
    pub fn new(a: Vertex, b: Vertex) -> Self {
        if a <= b {
            Edge { lo: a, hi: b }
        } else {
            Edge { lo: b, hi: a }
        }
    }

    pub fn lo(&self) -> Vertex {
        self.lo
    }

    pub fn hi(&self) -> Vertex {
        self.hi
    }

    pub fn endpoints(&self) -> (Vertex, Vertex) {
        (self.lo, self.hi)
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.lo == v || self.hi == v
    }

    /// The endpoint opposite to `v`, if `v` is an endpoint.
    pub fn other(&self, v: Vertex) -> Option<Vertex> {
        if v == self.lo {
            Some(self.hi)
        } else if v == self.hi {
            Some(self.lo)
        } else {
            None
        }
    }

    pub fn is_loop(&self) -> bool {
        self.lo == self.hi
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.lo, self.hi)
    }
}

impl From<(Vertex, Vertex)> for Edge {
    fn from((a, b): (Vertex, Vertex)) -> Self {
        Edge::new(a, b)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("duplicate edge {0}")]
    DuplicateEdge(Edge),
    #[error("graph has no vertices")]
    Empty,
    #[error("vertex {0} not in graph")]
    VertexNotFound(Vertex),
    #[error("edge {0} not in graph")]
    EdgeNotFound(Edge),
    #[error("graph is not connected")]
    NotConnected,
    #[error("relabelling merges distinct vertices")]
    NonInjectiveRelabel,
}

/// Incremental construction of a [`Graph`]. Rejects loops and parallel edges
/// as they are added.
#[derive(Debug, Clone, Default)]
pub struct GraphBuilder {
    adj: BTreeMap<Vertex, BTreeSet<Vertex>>,
    edge_count: usize,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, v: Vertex) -> &mut Self {
        self.adj.entry(v).or_default();
        self
    }

    pub fn add_edge(&mut self, a: Vertex, b: Vertex) -> Result<&mut Self, GraphError> {
        if a == b {
            return Err(GraphError::SelfLoop(a));
        }
        if self.adj.get(&a).is_some_and(|n| n.contains(&b)) {
            return Err(GraphError::DuplicateEdge(Edge::new(a, b)));
        }
        self.adj.entry(a).or_default().insert(b);
        self.adj.entry(b).or_default().insert(a);
        self.edge_count += 1;
        Ok(self)
    }

    pub fn has_edge(&self, a: Vertex, b: Vertex) -> bool {
        self.adj.get(&a).is_some_and(|n| n.contains(&b))
    }

    pub fn build(self) -> Result<Graph, GraphError> {
        if self.adj.is_empty() {
            return Err(GraphError::Empty);
        }
        Ok(Graph {
            adj: self.adj,
            edge_count: self.edge_count,
        })
    }
}

/// Simple undirected graph.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: BTreeMap<Vertex, BTreeSet<Vertex>>,
    edge_count: usize,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<_> = self.edges().map(|e| e.endpoints()).collect();
        f.debug_struct("Graph")
            .field("vertices", &self.adj.keys().collect::<Vec<_>>())
            .field("edges", &edges)
            .finish()
    }
}

impl Graph {
    /// Graph on the endpoints of `edges`.
    pub fn from_edges<I, E>(edges: I) -> Result<Graph, GraphError>
    where
        I: IntoIterator<Item = E>,
        E: Into<Edge>,
    {
        Self::new(std::iter::empty(), edges)
    }

    /// Graph with the given vertices plus every endpoint of `edges`.
    pub fn new<V, I, E>(vertices: V, edges: I) -> Result<Graph, GraphError>
    where
        V: IntoIterator<Item = Vertex>,
        I: IntoIterator<Item = E>,
        E: Into<Edge>,
    {
        let mut b = GraphBuilder::new();
        for v in vertices {
            b.add_vertex(v);
        }
        for e in edges {
            let e: Edge = e.into();
            b.add_edge(e.lo, e.hi)?;
        }
        b.build()
    }

    pub fn singleton(v: Vertex) -> Graph {
        let mut adj = BTreeMap::new();
        adj.insert(v, BTreeSet::new());
        Graph { adj, edge_count: 0 }
    }

    /// Path through `vertices` in the given order.
    pub fn path(vertices: &[Vertex]) -> Result<Graph, GraphError> {
        Self::new(
            vertices.iter().copied(),
            vertices.windows(2).map(|w| (w[0], w[1])),
        )
    }

    /// Cycle through `vertices` in the given order (at least 3).
    pub fn cycle(vertices: &[Vertex]) -> Result<Graph, GraphError> {
        let n = vertices.len();
        Self::new(
            vertices.iter().copied(),
            (0..n).map(|i| (vertices[i], vertices[(i + 1) % n])),
        )
    }

    pub fn complete(n: usize) -> Graph {
        let mut b = GraphBuilder::new();
        for i in 0..n {
            b.add_vertex(i);
            for j in 0..i {
                b.add_edge(j, i).expect("distinct pair");
            }
        }
        b.build().expect("n >= 1")
    }

    /// Star with centre 0 and leaves 1..=leaves.
    pub fn star(leaves: usize) -> Graph {
        let mut b = GraphBuilder::new();
        b.add_vertex(0);
        for i in 1..=leaves {
            b.add_edge(0, i).expect("distinct pair");
        }
        b.build().expect("centre present")
    }

    pub fn petersen() -> Graph {
        let outer = (0..5).map(|i| (i, (i + 1) % 5));
        let spokes = (0..5).map(|i| (i, i + 5));
        let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
        Graph::from_edges(outer.chain(spokes).chain(inner)).expect("petersen is simple")
    }

    pub(crate) fn from_adjacency(adj: BTreeMap<Vertex, BTreeSet<Vertex>>) -> Result<Graph, GraphError> {
        if adj.is_empty() {
            return Err(GraphError::Empty);
        }
        let twice: usize = adj.values().map(BTreeSet::len).sum();
        Ok(Graph {
            adj,
            edge_count: twice / 2,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Vertices in increasing id order.
    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.adj.keys().copied()
    }

    /// Edges in increasing `(lo, hi)` order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.adj
            .iter()
            .flat_map(|(&a, ns)| ns.range(a + 1..).map(move |&b| Edge { lo: a, hi: b }))
    }

    pub fn contains_vertex(&self, v: Vertex) -> bool {
        self.adj.contains_key(&v)
    }

    pub fn has_edge(&self, a: Vertex, b: Vertex) -> bool {
        self.adj.get(&a).is_some_and(|n| n.contains(&b))
    }

    pub fn contains_edge(&self, e: Edge) -> bool {
        self.has_edge(e.lo, e.hi)
    }

    /// Degree of `v`, zero when `v` is not a vertex.
    pub fn degree(&self, v: Vertex) -> usize {
        self.adj.get(&v).map_or(0, BTreeSet::len)
    }

    /// Neighbours of `v` in increasing id order.
    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.adj.get(&v).into_iter().flat_map(|n| n.iter().copied())
    }

    pub fn neighbor_set(&self, v: Vertex) -> Option<&BTreeSet<Vertex>> {
        self.adj.get(&v)
    }

    pub fn min_degree(&self) -> usize {
        self.adj.values().map(BTreeSet::len).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.adj.values().map(BTreeSet::len).max().unwrap_or(0)
    }

    pub fn max_vertex(&self) -> Vertex {
        *self.adj.keys().next_back().expect("graphs are nonempty")
    }

    pub fn min_vertex(&self) -> Vertex {
        *self.adj.keys().next().expect("graphs are nonempty")
    }

    /// Smallest id strictly above every vertex of the graph.
    pub fn fresh_vertex(&self) -> Vertex {
        self.max_vertex() + 1
    }

    pub fn pendant_vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.adj
            .iter()
            .filter(|(_, n)| n.len() == 1)
            .map(|(&v, _)| v)
    }

    pub fn vertex_set(&self) -> BTreeSet<Vertex> {
        self.adj.keys().copied().collect()
    }

    /// Vertices reachable from `start`, skipping `blocked`.
    pub fn reachable_avoiding(&self, start: Vertex, blocked: &BTreeSet<Vertex>) -> BTreeSet<Vertex> {
        let mut seen = BTreeSet::new();
        if !self.contains_vertex(start) || blocked.contains(&start) {
            return seen;
        }
        let mut queue = VecDeque::from([start]);
        seen.insert(start);
        while let Some(x) = queue.pop_front() {
            for y in self.neighbors(x) {
                if !blocked.contains(&y) && seen.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        seen
    }

    pub fn reachable(&self, start: Vertex) -> BTreeSet<Vertex> {
        self.reachable_avoiding(start, &BTreeSet::new())
    }

    /// Connected components, ordered by their smallest vertex.
    pub fn components(&self) -> Vec<BTreeSet<Vertex>> {
        self.components_avoiding(&BTreeSet::new())
    }

    /// Components of the graph with `blocked` removed, ordered by smallest vertex.
    pub fn components_avoiding(&self, blocked: &BTreeSet<Vertex>) -> Vec<BTreeSet<Vertex>> {
        let mut seen: BTreeSet<Vertex> = BTreeSet::new();
        let mut out = Vec::new();
        for v in self.vertices() {
            if blocked.contains(&v) || seen.contains(&v) {
                continue;
            }
            let comp = self.reachable_avoiding(v, blocked);
            seen.extend(comp.iter().copied());
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.reachable(self.min_vertex()).len() == self.vertex_count()
    }

    pub fn ensure_connected(&self) -> Result<(), GraphError> {
        if self.is_connected() {
            Ok(())
        } else {
            Err(GraphError::NotConnected)
        }
    }

    pub fn is_tree(&self) -> bool {
        self.edge_count + 1 == self.vertex_count() && self.is_connected()
    }

    pub fn is_forest(&self) -> bool {
        self.edge_count + self.components().len() == self.vertex_count()
    }

    /// Connected, acyclic and every degree at most 2.
    pub fn is_path(&self) -> bool {
        self.is_tree() && self.max_degree() <= 2
    }

    pub fn is_cycle(&self) -> bool {
        self.vertex_count() >= 3
            && self.adj.values().all(|n| n.len() == 2)
            && self.is_connected()
    }

    pub fn without_edge(&self, e: Edge) -> Result<Graph, GraphError> {
        if !self.contains_edge(e) {
            return Err(GraphError::EdgeNotFound(e));
        }
        let mut adj = self.adj.clone();
        adj.get_mut(&e.lo).expect("endpoint").remove(&e.hi);
        adj.get_mut(&e.hi).expect("endpoint").remove(&e.lo);
        Ok(Graph {
            adj,
            edge_count: self.edge_count - 1,
        })
    }

    pub fn without_edges<'a, I>(&self, edges: I) -> Result<Graph, GraphError>
    where
        I: IntoIterator<Item = &'a Edge>,
    {
        let mut adj = self.adj.clone();
        let mut removed = 0;
        for e in edges {
            let present = adj.get_mut(&e.lo).is_some_and(|n| n.remove(&e.hi));
            if !present {
                return Err(GraphError::EdgeNotFound(*e));
            }
            adj.get_mut(&e.hi).expect("endpoint").remove(&e.lo);
            removed += 1;
        }
        Ok(Graph {
            adj,
            edge_count: self.edge_count - removed,
        })
    }

    /// Subgraph induced by `keep` (ids not in the graph are ignored).
    pub fn induced(&self, keep: &BTreeSet<Vertex>) -> Result<Graph, GraphError> {
        let adj: BTreeMap<_, _> = self
            .adj
            .iter()
            .filter(|(v, _)| keep.contains(v))
            .map(|(&v, ns)| (v, ns.iter().copied().filter(|w| keep.contains(w)).collect()))
            .collect();
        Graph::from_adjacency(adj)
    }

    pub fn without_vertices(&self, drop: &BTreeSet<Vertex>) -> Result<Graph, GraphError> {
        let keep: BTreeSet<_> = self.vertices().filter(|v| !drop.contains(v)).collect();
        self.induced(&keep)
    }

    pub fn without_vertex(&self, v: Vertex) -> Result<Graph, GraphError> {
        if !self.contains_vertex(v) {
            return Err(GraphError::VertexNotFound(v));
        }
        self.without_vertices(&BTreeSet::from([v]))
    }

    /// Copy of the graph with a path of `len` new vertices hanging from
    /// `base`. New ids start at `first_id`; returns the graph and the new
    /// vertices ordered from the one adjacent to `base` to the pendant end.
    pub fn with_pendant_path(
        &self,
        base: Vertex,
        len: usize,
        first_id: Vertex,
    ) -> Result<(Graph, Vec<Vertex>), GraphError> {
        if !self.contains_vertex(base) {
            return Err(GraphError::VertexNotFound(base));
        }
        let mut b = GraphBuilder {
            adj: self.adj.clone(),
            edge_count: self.edge_count,
        };
        let mut prev = base;
        let mut added = Vec::with_capacity(len);
        for i in 0..len {
            let v = first_id + i;
            if self.contains_vertex(v) {
                return Err(GraphError::NonInjectiveRelabel);
            }
            b.add_edge(prev, v)?;
            added.push(v);
            prev = v;
        }
        Ok((b.build()?, added))
    }

    /// Renames vertices through `map`; unmapped ids are kept. The map must be
    /// injective on the vertex set.
    pub fn relabel(&self, map: &BTreeMap<Vertex, Vertex>) -> Result<Graph, GraphError> {
        let f = |v: Vertex| map.get(&v).copied().unwrap_or(v);
        let mut b = GraphBuilder::new();
        for v in self.vertices() {
            b.add_vertex(f(v));
        }
        for e in self.edges() {
            b.add_edge(f(e.lo), f(e.hi))?;
        }
        let g = b.build()?;
        if g.vertex_count() != self.vertex_count() {
            return Err(GraphError::NonInjectiveRelabel);
        }
        Ok(g)
    }
}
