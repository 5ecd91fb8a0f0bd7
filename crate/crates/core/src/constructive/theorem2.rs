//! Tree with at least `alpha(g, k)(v - k - 2) + 2` leaves for girth at least
//! `g` and no chain of more than `k` degree-2 vertices.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::blocks::{components_without, decompose_blocks, essential_cutpoints, find_spines, is_spine_component};
use crate::bounds::{bound_theorem2, girth_parameter, Rational};
use crate::graph::{Edge, Graph, Vertex};
use crate::metrics::{chain_metric, girth};
use crate::tree::{bfs_edges, SpanningTree};

use super::large_blocks::remove_large_blocks;
use super::trace::{ConstructionTrace, Op, TraceStep};
use super::{recombine, split_at, ConstructError, Piece};

/// Uses the measured girth (3 for trees) as the girth parameter.
pub fn construct_theorem2(g: &Graph, k: usize) -> Result<(SpanningTree, ConstructionTrace), ConstructError> {
    construct_theorem2_with_girth(g, k, girth_parameter(girth(g)))
}

/// The bound is checked for the whole graph only: pieces produced by
/// splitting can be trees that fall below it for girth parameters above 3.
pub fn construct_theorem2_with_girth(
    g: &Graph,
    k: usize,
    girth_param: usize,
) -> Result<(SpanningTree, ConstructionTrace), ConstructError> {
    if g.vertex_count() < 2 {
        return Err(ConstructError::TooFewVertices);
    }
    if !g.is_connected() {
        return Err(ConstructError::NotConnected);
    }
    if k < 1 {
        return Err(ConstructError::InvalidK);
    }
    let ell = chain_metric(g);
    if ell > k {
        return Err(ConstructError::ChainTooLong { ell, k });
    }
    let bound = bound_theorem2(g.vertex_count(), girth_param, k).map_err(|_| ConstructError::InvalidK)?;
    let mut steps = Vec::new();
    let tree = descend(&Arc::new(g.clone()), k, &mut steps)?;
    if Rational::from_integer(tree.leaf_count() as i64) < bound {
        return Err(ConstructError::BoundNotMet {
            v: g.vertex_count(),
            leaves: tree.leaf_count(),
            bound: bound.to_string(),
        });
    }
    let trace = ConstructionTrace {
        steps,
        tree: tree.clone(),
        k: Some(k),
    };
    Ok((tree, trace))
}

/// Components of `g - a` to put on the first side of a split so that
/// neither side is `a` plus a single spine.
fn choose_split(g: &Graph, a: Vertex) -> Option<Vec<Vertex>> {
    let comps = components_without(g, a);
    let (spines, others): (Vec<_>, Vec<_>) = comps.iter().partition(|c| is_spine_component(g, a, c));
    let root = |c: &BTreeSet<Vertex>| *c.iter().next().expect("nonempty");
    match (others.len(), spines.len()) {
        (t, _) if t >= 2 => Some(vec![root(others[0])]),
        (1, s) if s >= 2 => Some(vec![root(others[0])]),
        (0, s) if s >= 4 => Some(vec![root(spines[0]), root(spines[1])]),
        _ => None,
    }
}

/// Split pieces: a side in which `a` has degree at least 2 gets a spine of
/// `k + 1` new vertices at `a`; otherwise `a` is already pendant there.
pub(crate) fn split_pieces(g: &Graph, a: Vertex, roots: &[Vertex], k: usize) -> Result<(Piece, Piece), ConstructError> {
    let (g1, g2) = split_at(g, a, roots)?;
    let fresh = g.fresh_vertex();
    let pad = |gi: Graph| {
        let len = if gi.degree(a) >= 2 { k + 1 } else { 0 };
        Piece::padded(gi, a, len, fresh)
    };
    Ok((pad(g1)?, pad(g2)?))
}

fn descend(g: &Arc<Graph>, k: usize, steps: &mut Vec<TraceStep>) -> Result<SpanningTree, ConstructError> {
    if g.is_tree() {
        let tree = SpanningTree::of_tree(g.clone())?;
        steps.push(TraceStep::base("base-tree", &tree));
        return Ok(tree);
    }
    if g.vertex_count() <= k + 2 {
        let tree = SpanningTree::bfs(g.clone(), g.min_vertex())?;
        steps.push(TraceStep::base("base-degenerate", &tree));
        return Ok(tree);
    }

    for a in essential_cutpoints(g)?.into_iter().filter(|&a| g.degree(a) >= 3) {
        if let Some(roots) = choose_split(g, a) {
            let (p1, p2) = split_pieces(g, a, &roots, k)?;
            steps.push(TraceStep::new("1.1", Op::Split, [vec![a], roots].concat()));
            let t1 = descend(&Arc::new(p1.graph.clone()), k, steps)?;
            let t2 = descend(&Arc::new(p2.graph.clone()), k, steps)?;
            return recombine(g, a, &p1, &t1, &p2, &t2);
        }
    }

    if decompose_blocks(g)?.has_large_block() {
        let f = remove_large_blocks(g)?;
        steps.push(TraceStep::new("1.2", Op::Delete, f.iter().flat_map(|e| [e.lo(), e.hi()]).collect()));
        let sub = descend(&Arc::new(g.without_edges(&f)?), k, steps)?;
        return Ok(sub.rehost(g.clone())?);
    }

    let tree = spine_base(g)?;
    let case = if tree.1 { "base-2.2" } else { "base-2.1" };
    steps.push(TraceStep::base(case, &tree.0));
    Ok(tree.0)
}

/// Tree whose leaves include every spine end and, when the central block
/// has a vertex without a spine, that vertex too. The flag tells which.
fn spine_base(g: &Arc<Graph>) -> Result<(SpanningTree, bool), ConstructError> {
    let spines = find_spines(g);
    let spine_vertices: BTreeSet<Vertex> = spines.iter().flat_map(|s| s.path.iter().copied()).collect();
    let bases: BTreeSet<Vertex> = spines.iter().map(|s| s.base).collect();
    let h = g.without_vertices(&spine_vertices)?;
    let mut edges: Vec<Edge> = Vec::new();
    for s in &spines {
        edges.push(Edge::new(s.base, s.path[0]));
        edges.extend(s.path.windows(2).map(|p| Edge::new(p[0], p[1])));
    }
    let free = h.vertices().find(|v| !bases.contains(v));
    match free {
        Some(u) => {
            let rest: BTreeSet<Vertex> = h.vertices().filter(|&v| v != u).collect();
            let root = *rest.iter().next().expect("central block has at least three vertices");
            edges.extend(bfs_edges(&h, root, &rest));
            let hook = h.neighbors(u).next().expect("central block is connected");
            edges.push(Edge::new(u, hook));
        }
        None => edges.extend(bfs_edges(&h, h.min_vertex(), &h.vertex_set())),
    }
    Ok((SpanningTree::new(g.clone(), edges)?, free.is_some()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extremal::{gen_cycle_spine, glue_extremal_chain, FamilySpec};

    fn leaves(g: &Graph, k: usize) -> usize {
        let (t, trace) = construct_theorem2(g, k).unwrap();
        assert!(t.validate().is_ok());
        assert_eq!(trace.replay(g).unwrap().edges(), t.edges());
        t.leaf_count()
    }

    #[test]
    fn families_hit_the_bound() {
        assert_eq!(leaves(&gen_cycle_spine(3, 1).unwrap(), 1), 3);
        assert_eq!(leaves(&gen_cycle_spine(6, 2).unwrap(), 2), 4);
        assert_eq!(leaves(&gen_cycle_spine(5, 4).unwrap(), 4), 5);
        let chain = glue_extremal_chain(&FamilySpec::cycle_spine(6, 2).unwrap(), 2).unwrap();
        assert_eq!(leaves(&chain, 2), 6);
    }

    #[test]
    fn trees_are_returned_as_is() {
        let spider = Graph::from_edges([(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)]).unwrap();
        assert_eq!(leaves(&spider, 2), 3);
    }

    #[test]
    fn dense_graphs_go_through_block_removal() {
        assert!(leaves(&Graph::complete(5), 1) >= 3);
        assert!(leaves(&Graph::petersen(), 1) >= 2);
    }

    #[test]
    fn input_checks() {
        let p6 = Graph::path(&[0, 1, 2, 3, 4, 5]).unwrap();
        assert_eq!(
            construct_theorem2(&p6, 2).unwrap_err(),
            ConstructError::ChainTooLong { ell: 4, k: 2 }
        );
        assert_eq!(construct_theorem2(&p6, 0).unwrap_err(), ConstructError::InvalidK);
        let c6 = Graph::cycle(&[0, 1, 2, 3, 4, 5]).unwrap();
        assert_eq!(leaves(&c6, 6), 2);
    }
}
