//! Gluing two graphs at a vertex and contracting an edge.

use std::collections::{BTreeMap, BTreeSet};

use crate::graph::{Edge, Graph, GraphError, Vertex};

/// Result of [`glue`]. Vertices of the left graph keep their ids; vertices
/// of the right graph keep theirs unless they collide with a left id, in
/// which case they are moved above every id in use.
#[derive(Debug, Clone)]
pub struct Glued {
    pub graph: Graph,
    /// The identified vertex; it carries the left graph's id.
    pub merged: Vertex,
    right: BTreeMap<Vertex, Vertex>,
}

impl Glued {
    /// New id of a vertex of the left graph.
    pub fn left(&self, v: Vertex) -> Vertex {
        v
    }

    /// New id of a vertex of the right graph.
    pub fn right(&self, v: Vertex) -> Vertex {
        self.right.get(&v).copied().unwrap_or(v)
    }

    /// Full old-to-new mapping of the right graph's vertices that moved.
    pub fn right_map(&self) -> &BTreeMap<Vertex, Vertex> {
        &self.right
    }
}

/// Identifies `x1` of `g1` with `x2` of `g2`. The merged vertex is incident
/// to every former incidence of either vertex.
pub fn glue(g1: &Graph, x1: Vertex, g2: &Graph, x2: Vertex) -> Result<Glued, GraphError> {
    if !g1.contains_vertex(x1) {
        return Err(GraphError::VertexNotFound(x1));
    }
    if !g2.contains_vertex(x2) {
        return Err(GraphError::VertexNotFound(x2));
    }
    let mut next = g1.max_vertex().max(g2.max_vertex()) + 1;
    let mut right = BTreeMap::new();
    for v in g2.vertices() {
        if v == x2 {
            if v != x1 {
                right.insert(v, x1);
            }
        } else if g1.contains_vertex(v) {
            right.insert(v, next);
            next += 1;
        }
    }
    let map = |v: Vertex| right.get(&v).copied().unwrap_or(v);
    let mut adj: BTreeMap<Vertex, BTreeSet<Vertex>> = BTreeMap::new();
    for v in g1.vertices() {
        adj.insert(v, g1.neighbors(v).collect());
    }
    for v in g2.vertices() {
        let entry = adj.entry(map(v)).or_default();
        entry.extend(g2.neighbors(v).map(map));
    }
    let graph = Graph::from_adjacency(adj)?;
    Ok(Glued {
        graph,
        merged: x1,
        right,
    })
}

/// Result of contracting one edge: `absorbed` disappears into `survivor`.
#[derive(Debug, Clone)]
pub struct Contraction {
    pub graph: Graph,
    pub survivor: Vertex,
    pub absorbed: Vertex,
}

impl Contraction {
    pub fn map(&self, v: Vertex) -> Vertex {
        if v == self.absorbed {
            self.survivor
        } else {
            v
        }
    }

    pub fn edge(&self) -> Edge {
        Edge::new(self.survivor, self.absorbed)
    }
}

/// Contracts `e`, keeping its lower endpoint. Loops are dropped and parallel
/// edges merged, so the result stays simple.
pub fn contract_edge(g: &Graph, e: Edge) -> Result<Contraction, GraphError> {
    contract_into(g, e.lo(), e.hi())
}

/// Contracts the edge `survivor`-`absorbed`, keeping `survivor`'s id.
pub fn contract_into(g: &Graph, survivor: Vertex, absorbed: Vertex) -> Result<Contraction, GraphError> {
    if !g.has_edge(survivor, absorbed) {
        return Err(GraphError::EdgeNotFound(Edge::new(survivor, absorbed)));
    }
    let mut adj: BTreeMap<Vertex, BTreeSet<Vertex>> = BTreeMap::new();
    for v in g.vertices().filter(|&v| v != absorbed) {
        let ns = g
            .neighbors(v)
            .map(|w| if w == absorbed { survivor } else { w })
            .filter(|&w| w != v)
            .collect();
        adj.insert(v, ns);
    }
    let inherited: Vec<Vertex> = g.neighbors(absorbed).filter(|&w| w != survivor).collect();
    adj.get_mut(&survivor).expect("survivor kept").extend(inherited);
    Ok(Contraction {
        graph: Graph::from_adjacency(adj)?,
        survivor,
        absorbed,
    })
}
