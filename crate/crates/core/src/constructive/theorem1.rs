//! Tree with at least `(s - 2)/4 + 2` leaves, `s` the number of vertices of
//! degree other than 2, by induction on (vertices, edges).

use std::collections::BTreeSet;
use std::sync::Arc;

use thiserror::Error;

use crate::bounds::{bound_kw, bound_theorem1, Rational};
use crate::exact::{exact_mlst, SolverConfig};
use crate::graph::{Edge, Graph, Vertex};
use crate::metrics::s_count;
use crate::ops::contract_edge;
use crate::tree::{extend_tree_lemma3, SpanningTree};

use super::trace::{ConstructionTrace, Op, TraceStep};
use super::{component_without, is_cutpoint, recombine, split_at, ConstructError, Piece};

/// Node limit of the search in the pendant-free base case. The search starts
/// from the greedy tree, so a cut-off search still returns a tree at least
/// as leafy as greedy.
const BASE_NODE_BUDGET: u64 = 200_000;

/// `U`: pendant vertices; `W`: their neighbours; `X`: other neighbours of
/// `W`; `Y`: everything else.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionUWXY {
    pub u: BTreeSet<Vertex>,
    pub w: BTreeSet<Vertex>,
    pub x: BTreeSet<Vertex>,
    pub y: BTreeSet<Vertex>,
}

impl PartitionUWXY {
    pub fn of(g: &Graph) -> Self {
        let u: BTreeSet<Vertex> = g.pendant_vertices().collect();
        let w: BTreeSet<Vertex> = u.iter().flat_map(|&p| g.neighbors(p)).filter(|v| !u.contains(v)).collect();
        let x: BTreeSet<Vertex> = w
            .iter()
            .flat_map(|&v| g.neighbors(v))
            .filter(|v| !u.contains(v) && !w.contains(v))
            .collect();
        let y = g
            .vertices()
            .filter(|v| !u.contains(v) && !w.contains(v) && !x.contains(v))
            .collect();
        PartitionUWXY { u, w, x, y }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Lemma5Violation {
    #[error("no pendant vertices")]
    NotApplicable,
    #[error("property 1: vertices {0} and {1} of W are adjacent")]
    AdjacentW(Vertex, Vertex),
    #[error("property 2: vertex {w} of W has degree {degree}")]
    WDegree { w: Vertex, degree: usize },
    #[error("property 3: X is empty")]
    EmptyX,
    #[error("property 3: vertex {x} of X has degree {degree}")]
    XDegree { x: Vertex, degree: usize },
    #[error("property 4: vertex {0} of W is not adjacent to one pendant and two vertices of X")]
    WNeighbourhood(Vertex),
}

impl Lemma5Violation {
    /// Which of the four structural properties failed (0 when not applicable).
    pub fn property(&self) -> u8 {
        match self {
            Lemma5Violation::NotApplicable => 0,
            Lemma5Violation::AdjacentW(..) => 1,
            Lemma5Violation::WDegree { .. } => 2,
            Lemma5Violation::EmptyX | Lemma5Violation::XDegree { .. } => 3,
            Lemma5Violation::WNeighbourhood(_) => 4,
        }
    }
}

/// Structure every graph has once no earlier reduction applies.
pub fn check_lemma5_structure(g: &Graph, p: &PartitionUWXY) -> Result<(), Lemma5Violation> {
    if p.u.is_empty() {
        return Err(Lemma5Violation::NotApplicable);
    }
    for &w in &p.w {
        if let Some(other) = g.neighbors(w).find(|v| p.w.contains(v)) {
            return Err(Lemma5Violation::AdjacentW(w.min(other), w.max(other)));
        }
    }
    if let Some(&w) = p.w.iter().find(|&&w| g.degree(w) != 3) {
        return Err(Lemma5Violation::WDegree { w, degree: g.degree(w) });
    }
    if p.x.is_empty() {
        return Err(Lemma5Violation::EmptyX);
    }
    if let Some(&x) = p.x.iter().find(|&&x| g.degree(x) <= 3) {
        return Err(Lemma5Violation::XDegree { x, degree: g.degree(x) });
    }
    for &w in &p.w {
        let pendants = g.neighbors(w).filter(|v| p.u.contains(v)).count();
        let xs = g.neighbors(w).filter(|v| p.x.contains(v)).count();
        if pendants != 1 || xs != 2 {
            return Err(Lemma5Violation::WNeighbourhood(w));
        }
    }
    Ok(())
}

/// Follows the five-case induction. Every intermediate tree is checked
/// against the bound for its own graph.
pub fn construct_theorem1(g: &Graph) -> Result<(SpanningTree, ConstructionTrace), ConstructError> {
    if g.vertex_count() < 2 {
        return Err(ConstructError::TooFewVertices);
    }
    if !g.is_connected() {
        return Err(ConstructError::NotConnected);
    }
    let mut steps = Vec::new();
    let tree = descend(&Arc::new(g.clone()), &mut steps)?;
    let trace = ConstructionTrace {
        steps,
        tree: tree.clone(),
        k: None,
    };
    Ok((tree, trace))
}

fn descend(g: &Arc<Graph>, steps: &mut Vec<TraceStep>) -> Result<SpanningTree, ConstructError> {
    let tree = reduce(g, steps)?;
    let bound = bound_theorem1(s_count(g));
    if Rational::from_integer(tree.leaf_count() as i64) < bound {
        return Err(ConstructError::BoundNotMet {
            v: g.vertex_count(),
            leaves: tree.leaf_count(),
            bound: bound.to_string(),
        });
    }
    Ok(tree)
}

/// The two padded pieces of a split at a cutpoint: each side gets one new
/// pendant vertex at `a`.
pub(crate) fn case2_pieces(g: &Graph, a: Vertex, roots: &[Vertex]) -> Result<(Piece, Piece), ConstructError> {
    let (g1, g2) = split_at(g, a, roots)?;
    let fresh = g.fresh_vertex();
    Ok((Piece::padded(g1, a, 1, fresh)?, Piece::padded(g2, a, 1, fresh)?))
}

/// `G - x'w` and the component of it minus `a` that contains `w`.
pub(crate) fn case5_graphs(g: &Graph, a: Vertex, w: Vertex, x2: Vertex) -> Result<(Graph, Graph), ConstructError> {
    let star = g.without_edge(Edge::new(x2, w))?;
    let sub = component_without(&star, a, w)?;
    Ok((star, sub))
}

fn reduce(g: &Arc<Graph>, steps: &mut Vec<TraceStep>) -> Result<SpanningTree, ConstructError> {
    let pendants: BTreeSet<Vertex> = g.pendant_vertices().collect();

    if g.vertex_count() - pendants.len() <= 2 {
        // a star, a double star or a single edge
        let tree = SpanningTree::of_tree(g.clone())?;
        steps.push(TraceStep::base("base-small", &tree));
        return Ok(tree);
    }

    if let Some(a) = g.vertices().find(|&v| g.degree(v) == 2) {
        let b = g.neighbors(a).next().expect("degree two");
        if is_cutpoint(g, a)? {
            let c = contract_edge(g, Edge::new(a, b))?;
            steps.push(TraceStep::new("1a", Op::Contract, vec![c.survivor, c.absorbed]));
            let sub = descend(&Arc::new(c.graph.clone()), steps)?;
            return Ok(sub.uncontract(&c, g.clone())?);
        }
        steps.push(TraceStep::new("1b", Op::Delete, vec![a, b]));
        let sub = descend(&Arc::new(g.without_edge(Edge::new(a, b))?), steps)?;
        return Ok(sub.rehost(g.clone())?);
    }

    if pendants.is_empty() {
        let tree = exact_mlst(g, SolverConfig::with_budget(BASE_NODE_BUDGET))
            .map_err(|_| ConstructError::NotConnected)?
            .witness;
        let tree = tree.rehost(g.clone())?;
        let bound = bound_kw(g.vertex_count());
        if Rational::from_integer(tree.leaf_count() as i64) < bound {
            return Err(ConstructError::BoundNotMet {
                v: g.vertex_count(),
                leaves: tree.leaf_count(),
                bound: bound.to_string(),
            });
        }
        steps.push(TraceStep::base("base-kw", &tree));
        return Ok(tree);
    }

    let h = g.without_vertices(&pendants)?;
    let h_cuts = crate::blocks::decompose_blocks(&h)?.cutpoints;
    if let Some(&a) = h_cuts.iter().next() {
        let first = g
            .components_avoiding(&BTreeSet::from([a]))
            .into_iter()
            .find(|c| c.len() > 1)
            .expect("a cutpoint of H separates non-pendant vertices");
        let roots = vec![*first.iter().next().expect("nonempty")];
        let (p1, p2) = case2_pieces(g, a, &roots)?;
        steps.push(TraceStep::new("2", Op::Split, [vec![a], roots].concat()));
        let t1 = descend(&Arc::new(p1.graph.clone()), steps)?;
        let t2 = descend(&Arc::new(p2.graph.clone()), steps)?;
        return recombine(g, a, &p1, &t1, &p2, &t2);
    }

    for a in g.vertices().filter(|&v| g.degree(v) <= 3) {
        for b in g.neighbors(a) {
            let sub = component_without(g, a, b)?;
            if is_cutpoint(&sub, b)? {
                steps.push(TraceStep::new("3", Op::Extend, vec![a, b]));
                let t = descend(&Arc::new(sub), steps)?;
                return Ok(extend_tree_lemma3(&t, a, b, g.clone())?);
            }
        }
    }

    let heavy = |v: Vertex| !pendants.contains(&v) && g.degree(v) >= 4;
    if let Some(e) = g.edges().find(|e| heavy(e.lo()) && heavy(e.hi())) {
        steps.push(TraceStep::new("4", Op::Delete, vec![e.lo(), e.hi()]));
        let sub = descend(&Arc::new(g.without_edge(e)?), steps)?;
        return Ok(sub.rehost(g.clone())?);
    }

    let p = PartitionUWXY::of(g);
    check_lemma5_structure(g, &p)?;
    let w = *p.w.iter().next().expect("W is nonempty");
    let xs: Vec<Vertex> = g.neighbors(w).filter(|v| p.x.contains(v)).collect();
    let (x, x2) = (xs[0], xs[1]);
    let a = g.neighbors(x).find(|&v| v != w).expect("X vertices have degree above 3");
    let (star, sub) = case5_graphs(g, a, w, x2)?;
    steps.push(TraceStep::new("5", Op::Extend, vec![a, x, w, x2]));
    let t = descend(&Arc::new(sub), steps)?;
    let t_star = extend_tree_lemma3(&t, a, x, Arc::new(star))?;
    Ok(t_star.rehost(g.clone())?)
}
