//! Spanning trees built by following the inductive proofs of the two leaf
//! bounds step by step, with an auditable trace of every reduction.

mod large_blocks;
mod theorem1;
mod theorem2;
mod trace;

use std::collections::BTreeSet;
use std::sync::Arc;

use thiserror::Error;

use crate::blocks::decompose_blocks;
use crate::graph::{Graph, GraphError, Vertex};
use crate::ops::{contract_into, glue};
use crate::tree::{glue_trees, SpanningTree, TreeError};

pub use large_blocks::{check_large_block_removal, remove_large_blocks, RemovalViolation};
pub use theorem1::{check_lemma5_structure, construct_theorem1, Lemma5Violation, PartitionUWXY};
pub use theorem2::{construct_theorem2, construct_theorem2_with_girth};
pub use trace::{replay_steps, ConstructionTrace, Op, TraceError, TraceStep};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error("graph is not connected")]
    NotConnected,
    #[error("graph needs at least two vertices")]
    TooFewVertices,
    #[error("chain parameter k must be at least 1")]
    InvalidK,
    #[error("graph has a chain of {ell} degree-2 vertices, more than k = {k}")]
    ChainTooLong { ell: usize, k: usize },
    #[error("constructed tree has {leaves} leaves, below the bound {bound} (v = {v})")]
    BoundNotMet { v: usize, leaves: usize, bound: String },
    #[error("case structure check failed: {0}")]
    Lemma5(#[from] Lemma5Violation),
    #[error("no edge set removes every large block")]
    SearchExhausted,
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Tree(#[from] TreeError),
}

impl From<crate::tree::TreeViolation> for ConstructError {
    fn from(v: crate::tree::TreeViolation) -> Self {
        ConstructError::Tree(v.into())
    }
}

/// `a` together with the components of `g - a` that contain one of `roots`,
/// and `a` together with all other components.
pub(crate) fn split_at(g: &Graph, a: Vertex, roots: &[Vertex]) -> Result<(Graph, Graph), GraphError> {
    let mut left = BTreeSet::from([a]);
    let mut right = BTreeSet::from([a]);
    for comp in g.components_avoiding(&BTreeSet::from([a])) {
        if roots.iter().any(|r| comp.contains(r)) {
            left.extend(comp);
        } else {
            right.extend(comp);
        }
    }
    Ok((g.induced(&left)?, g.induced(&right)?))
}

/// A piece of a split, possibly padded with a pendant path at the split
/// vertex, and the vertex of the piece used for gluing.
pub(crate) struct Piece {
    pub graph: Graph,
    pub glue_at: Vertex,
}

impl Piece {
    /// Pads `g` with a path of `len` fresh vertices (numbered from `first`)
    /// hanging off `a`; with `len == 0` the piece is glued at `a` itself.
    pub fn padded(g: Graph, a: Vertex, len: usize, first: Vertex) -> Result<Self, GraphError> {
        if len == 0 {
            return Ok(Piece { graph: g, glue_at: a });
        }
        let (graph, path) = g.with_pendant_path(a, len, first)?;
        let glue_at = *path.last().expect("nonempty pad");
        Ok(Piece { graph, glue_at })
    }
}

/// Rebuilds a tree of `g` from trees of two pieces that share the split
/// vertex `a`: glue the pieces at their glue points, then contract the path
/// between the two copies of `a`. Leaf count is `t1 + t2 - 2`.
pub(crate) fn recombine(
    g: &Arc<Graph>,
    a: Vertex,
    p1: &Piece,
    t1: &SpanningTree,
    p2: &Piece,
    t2: &SpanningTree,
) -> Result<SpanningTree, ConstructError> {
    let glued = glue(&p1.graph, p1.glue_at, &p2.graph, p2.glue_at)?;
    let mut tree = glue_trees(t1, p1.glue_at, t2, p2.glue_at, &glued)?;
    let mut graph = glued.graph.clone();
    let target = glued.right(a);
    let path = shortest_path(&graph, a, target).expect("copies of the split vertex are joined");
    for &v in &path[1..] {
        let c = contract_into(&graph, a, v)?;
        tree = tree.contract(&c)?;
        graph = c.graph;
    }
    debug_assert_eq!(&graph, g.as_ref());
    Ok(tree.rehost(g.clone())?)
}

fn shortest_path(g: &Graph, from: Vertex, to: Vertex) -> Option<Vec<Vertex>> {
    let mut prev = std::collections::BTreeMap::from([(from, from)]);
    let mut queue = std::collections::VecDeque::from([from]);
    while let Some(x) = queue.pop_front() {
        if x == to {
            let mut path = vec![to];
            let mut cur = to;
            while cur != from {
                cur = prev[&cur];
                path.push(cur);
            }
            path.reverse();
            return Some(path);
        }
        for y in g.neighbors(x) {
            if let std::collections::btree_map::Entry::Vacant(e) = prev.entry(y) {
                e.insert(x);
                queue.push_back(y);
            }
        }
    }
    None
}

/// The component of `g - a` containing `b`, as an induced subgraph.
pub(crate) fn component_without(g: &Graph, a: Vertex, b: Vertex) -> Result<Graph, GraphError> {
    let comp = g.reachable_avoiding(b, &BTreeSet::from([a]));
    g.induced(&comp)
}

pub(crate) fn is_cutpoint(g: &Graph, v: Vertex) -> Result<bool, GraphError> {
    Ok(decompose_blocks(g)?.cutpoints.contains(&v))
}
