//! Spanning-tree certificates and the tree-composition operations.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt::Write as _;
use std::sync::Arc;

use thiserror::Error;

use crate::blocks::decompose_blocks;
use crate::graph::{Edge, Graph, GraphError, Vertex};
use crate::io::graph_hash;
use crate::ops::{Contraction, Glued};

/// The first spanning-tree invariant an edge set breaks.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeViolation {
    #[error("subgraph: edge {0} is not an edge of the host")]
    NotHostEdge(Edge),
    #[error("acyclic: edge {0} closes a cycle")]
    Cycle(Edge),
    #[error("spanning: vertex {0} is not reached")]
    NotSpanning(Vertex),
    #[error("edge count: expected {expected}, found {found}")]
    EdgeCount { expected: usize, found: usize },
}

impl TreeViolation {
    /// Short name of the violated invariant.
    pub fn clause(&self) -> &'static str {
        match self {
            TreeViolation::NotHostEdge(_) => "subgraph",
            TreeViolation::Cycle(_) => "acyclic",
            TreeViolation::NotSpanning(_) => "spanning",
            TreeViolation::EdgeCount { .. } => "edge-count",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error(transparent)]
    Violation(#[from] TreeViolation),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("vertex {0} is not a leaf of the tree")]
    NotALeaf(Vertex),
    #[error("precondition violated: {0}")]
    PreconditionViolated(&'static str),
    #[error("malformed tree text at line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// Checks that `edges` form a spanning tree of `host`; returns the leaf count.
pub fn validate_edges(host: &Graph, edges: &BTreeSet<Edge>) -> Result<usize, TreeViolation> {
    let mut root: BTreeMap<Vertex, Vertex> = host.vertices().map(|v| (v, v)).collect();
    fn find(root: &mut BTreeMap<Vertex, Vertex>, mut v: Vertex) -> Vertex {
        while root[&v] != v {
            let up = root[&root[&v]];
            root.insert(v, up);
            v = up;
        }
        v
    }
    for &e in edges {
        if !host.contains_edge(e) {
            return Err(TreeViolation::NotHostEdge(e));
        }
    }
    for &e in edges {
        let (ra, rb) = (find(&mut root, e.lo()), find(&mut root, e.hi()));
        if ra == rb {
            return Err(TreeViolation::Cycle(e));
        }
        root.insert(ra, rb);
    }
    let anchor = find(&mut root, host.min_vertex());
    for v in host.vertices() {
        if find(&mut root, v) != anchor {
            return Err(TreeViolation::NotSpanning(v));
        }
    }
    let expected = host.vertex_count() - 1;
    if edges.len() != expected {
        return Err(TreeViolation::EdgeCount {
            expected,
            found: edges.len(),
        });
    }
    let mut degree: BTreeMap<Vertex, usize> = BTreeMap::new();
    for e in edges {
        *degree.entry(e.lo()).or_default() += 1;
        *degree.entry(e.hi()).or_default() += 1;
    }
    Ok(degree.values().filter(|&&d| d == 1).count())
}

/// Breadth-first tree edges over the vertices in `allowed`, from `root`,
/// visiting neighbours in increasing id order.
pub fn bfs_edges(g: &Graph, root: Vertex, allowed: &BTreeSet<Vertex>) -> Vec<Edge> {
    let mut seen = BTreeSet::from([root]);
    let mut queue = VecDeque::from([root]);
    let mut out = Vec::new();
    while let Some(x) = queue.pop_front() {
        for y in g.neighbors(x) {
            if allowed.contains(&y) && seen.insert(y) {
                out.push(Edge::new(x, y));
                queue.push_back(y);
            }
        }
    }
    out
}

/// A validated spanning tree of `host`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanningTree {
    host: Arc<Graph>,
    edges: BTreeSet<Edge>,
    leaf_count: usize,
}

impl SpanningTree {
    pub fn new<I>(host: Arc<Graph>, edges: I) -> Result<Self, TreeViolation>
    where
        I: IntoIterator<Item = Edge>,
    {
        let edges: BTreeSet<Edge> = edges.into_iter().collect();
        let leaf_count = validate_edges(&host, &edges)?;
        Ok(SpanningTree {
            host,
            edges,
            leaf_count,
        })
    }

    /// The host graph itself, when it is a tree.
    pub fn of_tree(host: Arc<Graph>) -> Result<Self, TreeViolation> {
        let edges: Vec<Edge> = host.edges().collect();
        Self::new(host, edges)
    }

    /// Breadth-first tree from `root`.
    pub fn bfs(host: Arc<Graph>, root: Vertex) -> Result<Self, TreeError> {
        if !host.contains_vertex(root) {
            return Err(GraphError::VertexNotFound(root).into());
        }
        host.ensure_connected()?;
        let edges = bfs_edges(&host, root, &host.vertex_set());
        Ok(Self::new(host, edges)?)
    }

    pub fn host(&self) -> &Arc<Graph> {
        &self.host
    }

    pub fn edges(&self) -> &BTreeSet<Edge> {
        &self.edges
    }

    pub fn leaf_count(&self) -> usize {
        self.leaf_count
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.edges.iter().filter(|e| e.contains(v)).count()
    }

    pub fn is_leaf(&self, v: Vertex) -> bool {
        self.degree(v) == 1
    }

    pub fn leaves(&self) -> BTreeSet<Vertex> {
        let mut degree: BTreeMap<Vertex, usize> = BTreeMap::new();
        for e in &self.edges {
            *degree.entry(e.lo()).or_default() += 1;
            *degree.entry(e.hi()).or_default() += 1;
        }
        degree.into_iter().filter(|&(_, d)| d == 1).map(|(v, _)| v).collect()
    }

    /// Re-checks every invariant, including the cached leaf count.
    pub fn validate(&self) -> Result<(), TreeViolation> {
        let leaves = validate_edges(&self.host, &self.edges)?;
        debug_assert_eq!(leaves, self.leaf_count);
        Ok(())
    }

    /// The same edge set seen as a spanning tree of a supergraph on the same
    /// vertices.
    pub fn rehost(&self, host: Arc<Graph>) -> Result<Self, TreeViolation> {
        Self::new(host, self.edges.iter().copied())
    }

    /// Image of the tree under a contraction of one of its own edges.
    pub fn contract(&self, c: &Contraction) -> Result<Self, TreeError> {
        if !self.edges.contains(&c.edge()) {
            return Err(TreeError::PreconditionViolated("contracted edge belongs to the tree"));
        }
        let edges: Vec<Edge> = self
            .edges
            .iter()
            .filter(|&&e| e != c.edge())
            .map(|e| Edge::new(c.map(e.lo()), c.map(e.hi())))
            .collect();
        Ok(Self::new(Arc::new(c.graph.clone()), edges)?)
    }

    /// Lifts a spanning tree of `c.graph` back to `original`, the graph that
    /// was contracted: edges at the merged vertex are routed to whichever
    /// endpoint carried them and the contracted edge is added.
    pub fn uncontract(&self, c: &Contraction, original: Arc<Graph>) -> Result<Self, TreeError> {
        let lift = |x: Vertex, other: Vertex| {
            if x == c.survivor && !original.has_edge(c.survivor, other) {
                c.absorbed
            } else {
                x
            }
        };
        let mut edges: Vec<Edge> = self
            .edges
            .iter()
            .map(|e| Edge::new(lift(e.lo(), e.hi()), lift(e.hi(), e.lo())))
            .collect();
        edges.push(c.edge());
        Ok(Self::new(original, edges)?)
    }

    /// `tree <host-hash> <leaf_count>` followed by one `u v` line per edge.
    pub fn to_text(&self) -> String {
        let mut out = format!("tree {} {}\n", graph_hash(&self.host), self.leaf_count);
        for e in &self.edges {
            writeln!(out, "{} {}", e.lo(), e.hi()).unwrap();
        }
        out
    }

    pub fn from_text(host: Arc<Graph>, text: &str) -> Result<Self, TreeError> {
        let parse_err = |line: usize, message: String| TreeError::Parse { line, message };
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (_, header) = lines.next().ok_or_else(|| parse_err(1, "missing header".into()))?;
        let toks: Vec<&str> = header.split_whitespace().collect();
        let (hash, leaves) = match toks.as_slice() {
            ["tree", hash, leaves] => (*hash, *leaves),
            _ => return Err(parse_err(1, format!("bad header {header:?}"))),
        };
        if hash != graph_hash(&host) {
            return Err(parse_err(1, "host hash does not match".into()));
        }
        let claimed: usize = leaves.parse().map_err(|_| parse_err(1, "bad leaf count".into()))?;
        let mut edges = Vec::new();
        for (i, line) in lines {
            let nums: Vec<Vertex> = line
                .split_whitespace()
                .map(str::parse)
                .collect::<Result<_, _>>()
                .map_err(|_| parse_err(i + 1, format!("bad edge {line:?}")))?;
            match nums.as_slice() {
                [a, b] => edges.push(Edge::new(*a, *b)),
                _ => return Err(parse_err(i + 1, format!("bad edge {line:?}"))),
            }
        }
        let tree = Self::new(host, edges)?;
        if tree.leaf_count != claimed {
            return Err(parse_err(1, format!("header claims {claimed} leaves, tree has {}", tree.leaf_count)));
        }
        Ok(tree)
    }
}

/// Glues two trees at leaves `x1` and `x2`, giving a spanning tree of the
/// glued graph with `leaf_count(t1) + leaf_count(t2) - 2` leaves.
pub fn glue_trees(
    t1: &SpanningTree,
    x1: Vertex,
    t2: &SpanningTree,
    x2: Vertex,
    glued: &Glued,
) -> Result<SpanningTree, TreeError> {
    if !t1.is_leaf(x1) {
        return Err(TreeError::NotALeaf(x1));
    }
    if !t2.is_leaf(x2) {
        return Err(TreeError::NotALeaf(x2));
    }
    let left = t1.edges.iter().map(|e| Edge::new(glued.left(e.lo()), glued.left(e.hi())));
    let right = t2.edges.iter().map(|e| Edge::new(glued.right(e.lo()), glued.right(e.hi())));
    let tree = SpanningTree::new(Arc::new(glued.graph.clone()), left.chain(right).collect::<Vec<_>>())?;
    debug_assert_eq!(tree.leaf_count, t1.leaf_count + t2.leaf_count - 2);
    Ok(tree)
}

/// Extends a tree of `G'`, the component of `g - a` containing `b`, to a
/// tree of `g`: `a` is hung from `b` and every other component of `g - a`
/// is spanned breadth-first and attached to `a` through its lowest
/// neighbour of `a`. When `b` is a cutpoint of `G'` the result has at least
/// one more leaf than `t_prime`.
pub fn extend_tree_lemma3(
    t_prime: &SpanningTree,
    a: Vertex,
    b: Vertex,
    g: Arc<Graph>,
) -> Result<SpanningTree, TreeError> {
    if !g.has_edge(a, b) {
        return Err(TreeError::PreconditionViolated("a and b are adjacent"));
    }
    let blocked = BTreeSet::from([a]);
    let comps = g.components_avoiding(&blocked);
    let home = comps
        .iter()
        .find(|c| c.contains(&b))
        .expect("b survives deleting a");
    if t_prime.host.vertex_set() != *home || *t_prime.host != g.induced(home)? {
        return Err(TreeError::PreconditionViolated(
            "tree host is the component of g - a containing b",
        ));
    }
    if !decompose_blocks(&t_prime.host)?.cutpoints.contains(&b) {
        return Err(TreeError::PreconditionViolated("b is a cutpoint of the component"));
    }
    let mut edges: Vec<Edge> = t_prime.edges.iter().copied().collect();
    edges.push(Edge::new(a, b));
    for comp in comps.iter().filter(|c| !c.contains(&b)) {
        let entry = g
            .neighbors(a)
            .find(|w| comp.contains(w))
            .expect("component of g - a touches a");
        edges.push(Edge::new(a, entry));
        edges.extend(bfs_edges(&g, entry, comp));
    }
    Ok(SpanningTree::new(g, edges)?)
}
