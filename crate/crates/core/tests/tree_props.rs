mod common;

use std::collections::BTreeSet;
use std::sync::Arc;

use common::connected_graph;
use leafspan::tree::extend_tree_lemma3;
use leafspan::{decompose_blocks, exact_mlst, glue, glue_trees, Graph, SolverConfig, SpanningTree, Vertex};
use proptest::prelude::*;

/// `g` with a new pendant vertex hung from `at`; returns the pendant id.
fn with_pendant(g: &Graph, at: Vertex) -> (Graph, Vertex) {
    let p = g.fresh_vertex();
    let edges = g.edges().map(|e| (e.lo(), e.hi())).chain([(at, p)]);
    (Graph::new(g.vertices().chain([p]), edges).unwrap(), p)
}

fn optimum(g: &Graph) -> SpanningTree {
    exact_mlst(g, SolverConfig::default()).unwrap().witness
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn glued_optimal_trees_stay_optimal(
        g1 in connected_graph(1, 6),
        g2 in connected_graph(1, 6),
        a1 in any::<prop::sample::Index>(),
        a2 in any::<prop::sample::Index>(),
    ) {
        let (h1, x1) = with_pendant(&g1, a1.index(g1.vertex_count()));
        let (h2, x2) = with_pendant(&g2, a2.index(g2.vertex_count()));
        let (t1, t2) = (optimum(&h1), optimum(&h2));
        let glued = glue(&h1, x1, &h2, x2).unwrap();
        let t = glue_trees(&t1, x1, &t2, x2, &glued).unwrap();
        prop_assert!(t.validate().is_ok());
        prop_assert_eq!(t.leaf_count(), t1.leaf_count() + t2.leaf_count() - 2);
        prop_assert_eq!(t.leaf_count(), exact_mlst(&glued.graph, SolverConfig::default()).unwrap().u_value);
    }

    #[test]
    fn glue_trees_rejects_internal_vertices(g in connected_graph(3, 6)) {
        let t = SpanningTree::bfs(Arc::new(g.clone()), 0).unwrap();
        if let Some(x) = g.vertices().find(|&x| !t.is_leaf(x)) {
            let glued = glue(&g, x, &g, x).unwrap();
            prop_assert!(glue_trees(&t, x, &t, x, &glued).is_err());
        }
    }

    /// `a` joined to the cutpoint `b` of `core` (and to `extra_links` more
    /// vertices of it), plus `hang` further components attached only to `a`.
    #[test]
    fn extension_gains_a_leaf(
        core in connected_graph(3, 7),
        pick in any::<prop::sample::Index>(),
        extra_links in prop::collection::vec(any::<prop::sample::Index>(), 0..3),
        hang in prop::collection::vec(connected_graph(1, 4), 0..3),
    ) {
        let cuts: Vec<Vertex> = decompose_blocks(&core).unwrap().cutpoints.into_iter().collect();
        prop_assume!(!cuts.is_empty());
        let b = cuts[pick.index(cuts.len())];
        let a = core.fresh_vertex();
        let mut vertices: Vec<Vertex> = core.vertices().chain([a]).collect();
        let mut edges: BTreeSet<(Vertex, Vertex)> = core.edges().map(|e| (e.lo(), e.hi())).collect();
        edges.insert((b, a));
        for i in &extra_links {
            let w = i.index(core.vertex_count());
            edges.insert((w.min(a), w.max(a)));
        }
        let mut offset = a + 1;
        for h in &hang {
            vertices.extend(h.vertices().map(|v| v + offset));
            edges.extend(h.edges().map(|e| (e.lo() + offset, e.hi() + offset)));
            edges.insert((a, offset));
            offset += h.vertex_count();
        }
        let g = Arc::new(Graph::new(vertices, edges).unwrap());
        let t_prime = SpanningTree::bfs(Arc::new(core.clone()), core.min_vertex()).unwrap();
        prop_assert!(!t_prime.is_leaf(b));
        let t = extend_tree_lemma3(&t_prime, a, b, g.clone()).unwrap();
        prop_assert!(t.validate().is_ok());
        prop_assert!(t.leaf_count() > t_prime.leaf_count());
        if hang.is_empty() {
            prop_assert_eq!(t.leaf_count(), t_prime.leaf_count() + 1);
            prop_assert!(t.is_leaf(a));
        }
        let u = exact_mlst(&g, SolverConfig::default()).unwrap().u_value;
        prop_assert!(u > exact_mlst(&core, SolverConfig::default()).unwrap().u_value);
    }
}

#[test]
fn extension_checks_its_preconditions() {
    let g = Arc::new(Graph::from_edges([(0, 1), (1, 2), (2, 3), (3, 0), (0, 4)]).unwrap());
    let core = Arc::new(g.without_vertex(4).unwrap());
    let t = SpanningTree::bfs(core, 0).unwrap();
    assert!(extend_tree_lemma3(&t, 4, 0, g.clone()).is_err(), "0 is not a cutpoint of the cycle");
    assert!(extend_tree_lemma3(&t, 4, 2, g).is_err(), "4 and 2 are not adjacent");
}
