//! Graph strategies and brute-force helpers shared by the property tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use leafspan::{Edge, Graph, Vertex};
use proptest::prelude::*;

/// Connected graph on `0..v`: a random tree plus up to `2v` random chords.
pub fn connected_graph(min_v: usize, max_v: usize) -> impl Strategy<Value = Graph> {
    (min_v..=max_v).prop_flat_map(|v| {
        (
            Just(v),
            prop::collection::vec(any::<u32>(), v.saturating_sub(1)),
            prop::collection::vec((0..v, 0..v), 0..=2 * v),
        )
            .prop_map(|(v, parents, extra)| {
                let mut edges = BTreeSet::new();
                for (i, p) in parents.into_iter().enumerate() {
                    let child = i + 1;
                    edges.insert((p as usize % child, child));
                }
                for (a, b) in extra {
                    if a != b {
                        edges.insert((a.min(b), a.max(b)));
                    }
                }
                Graph::new(0..v, edges).unwrap()
            })
    })
}

/// Random tree on `0..v`.
pub fn tree(min_v: usize, max_v: usize) -> impl Strategy<Value = Graph> {
    (min_v..=max_v)
        .prop_flat_map(|v| prop::collection::vec(any::<u32>(), v - 1))
        .prop_map(|parents| {
            let v = parents.len() + 1;
            Graph::new(0..v, parents.iter().enumerate().map(|(i, p)| (*p as usize % (i + 1), i + 1))).unwrap()
        })
}

/// Number of components after deleting `drop_v` and `drop_e`.
pub fn components(g: &Graph, drop_v: Option<Vertex>, drop_e: Option<Edge>) -> usize {
    let mut seen = BTreeSet::new();
    let mut count = 0;
    for s in g.vertices().filter(|&s| Some(s) != drop_v) {
        if !seen.insert(s) {
            continue;
        }
        count += 1;
        let mut stack = vec![s];
        while let Some(x) = stack.pop() {
            for y in g.neighbors(x) {
                if Some(y) != drop_v && Some(Edge::new(x, y)) != drop_e && seen.insert(y) {
                    stack.push(y);
                }
            }
        }
    }
    count
}

/// Leaf count of the tree given by `edges` on the vertices of `g`, or
/// `None` if the edges do not form a spanning tree.
pub fn leaves_if_tree(g: &Graph, edges: &[Edge]) -> Option<usize> {
    if edges.len() + 1 != g.vertex_count() {
        return None;
    }
    let h = Graph::new(g.vertices(), edges.iter().map(|e| (e.lo(), e.hi()))).ok()?;
    (components(&h, None, None) == 1).then(|| h.vertices().filter(|&v| h.degree(v) == 1).count())
}

/// Maximum leaf count by trying every `(v-1)`-subset of edges.
pub fn max_leaves_by_subsets(g: &Graph) -> usize {
    let edges: Vec<Edge> = g.edges().collect();
    let k = g.vertex_count() - 1;
    let mut best = 0;
    let mut pick: Vec<usize> = (0..k).collect();
    loop {
        let chosen: Vec<Edge> = pick.iter().map(|&i| edges[i]).collect();
        if let Some(l) = leaves_if_tree(g, &chosen) {
            best = best.max(l);
        }
        let mut i = k;
        loop {
            if i == 0 {
                return best;
            }
            i -= 1;
            if pick[i] != i + edges.len() - k {
                break;
            }
        }
        pick[i] += 1;
        for j in i + 1..k {
            pick[j] = pick[j - 1] + 1;
        }
    }
}

/// Number of spanning trees by the matrix-tree theorem (fraction-free
/// elimination on a reduced Laplacian).
pub fn kirchhoff(g: &Graph) -> i128 {
    let ids: Vec<Vertex> = g.vertices().collect();
    let n = ids.len() - 1;
    if n == 0 {
        return 1;
    }
    let idx = |v: Vertex| ids.binary_search(&v).unwrap();
    let mut m = vec![vec![0i128; n]; n];
    for e in g.edges() {
        let (a, b) = (idx(e.lo()), idx(e.hi()));
        for (x, y) in [(a, b), (b, a)] {
            if x < n {
                m[x][x] += 1;
                if y < n {
                    m[x][y] -= 1;
                }
            }
        }
    }
    let mut prev = 1i128;
    let mut sign = 1i128;
    for c in 0..n {
        if m[c][c] == 0 {
            match (c + 1..n).find(|&r| m[r][c] != 0) {
                Some(r) => {
                    m.swap(c, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for r in c + 1..n {
            for j in c + 1..n {
                m[r][j] = (m[r][j] * m[c][c] - m[r][c] * m[c][j]) / prev;
            }
        }
        prev = m[c][c];
    }
    sign * m[n - 1][n - 1]
}
