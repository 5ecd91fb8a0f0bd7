//! Graphs on which the lower bounds are attained with equality.

use std::fmt;

use thiserror::Error;

use crate::blocks::find_spines;
use crate::bounds::{bound_theorem1, bound_theorem2, half_parameter, Rational};
use crate::graph::{Graph, GraphBuilder, GraphError, Vertex};
use crate::ops::{contract_into, glue};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtremalError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    TriangleTree,
    /// `k < g - 2`: even cycle, spines on alternate vertices.
    CycleSpineSparse,
    /// `k >= g - 2`: cycle of length `g`, a spine on every vertex.
    CycleSpineDense,
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FamilyKind::TriangleTree => "triangle-tree",
            FamilyKind::CycleSpineSparse => "cycle-spine-sparse",
            FamilyKind::CycleSpineDense => "cycle-spine-dense",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FamilySpec {
    pub kind: FamilyKind,
    /// Triangle count, or `⌈g/2⌉ - 1` for the sparse cycle family.
    pub n: usize,
    pub g: usize,
    pub k: usize,
}

impl FamilySpec {
    pub fn triangle_tree(n: usize) -> Result<Self, ExtremalError> {
        if n == 0 {
            return Err(ExtremalError::InvalidParams("triangle tree needs n >= 1".into()));
        }
        Ok(FamilySpec {
            kind: FamilyKind::TriangleTree,
            n,
            g: 3,
            k: 0,
        })
    }

    /// Picks the sparse or dense regime from `g` and `k`.
    pub fn cycle_spine(g: usize, k: usize) -> Result<Self, ExtremalError> {
        if g < 3 || k < 1 {
            return Err(ExtremalError::InvalidParams(format!(
                "cycle-spine family needs g >= 3 and k >= 1, got g={g}, k={k}"
            )));
        }
        let kind = if k + 2 < g {
            FamilyKind::CycleSpineSparse
        } else {
            FamilyKind::CycleSpineDense
        };
        Ok(FamilySpec {
            kind,
            n: half_parameter(g),
            g,
            k,
        })
    }

    pub fn build(&self) -> Result<Graph, ExtremalError> {
        match self.kind {
            FamilyKind::TriangleTree => gen_triangle_tree(self.n),
            _ => gen_cycle_spine(self.g, self.k),
        }
    }

    /// Vertex count of one copy.
    pub fn order(&self) -> usize {
        match self.kind {
            FamilyKind::TriangleTree => 4 * self.n + 2,
            FamilyKind::CycleSpineSparse => 2 * self.n + 2 + (self.n + 1) * (self.k + 1),
            FamilyKind::CycleSpineDense => self.g * (self.k + 2),
        }
    }

    /// Vertex count of a chain of `copies` glued copies.
    pub fn chain_order(&self, copies: usize) -> usize {
        let per_junction = match self.kind {
            FamilyKind::TriangleTree => self.order() - 2,
            _ => self.order() - self.k - 2,
        };
        self.order() + (copies - 1) * per_junction
    }

    /// The bound the family attains, evaluated at `v` vertices.
    pub fn bound(&self, v: usize) -> Rational {
        match self.kind {
            FamilyKind::TriangleTree => bound_theorem1(v),
            _ => bound_theorem2(v, self.g, self.k).expect("validated parameters"),
        }
    }

    /// Maximum leaf count of a chain of `copies` copies.
    pub fn expected_leaves(&self, copies: usize) -> usize {
        match self.kind {
            FamilyKind::TriangleTree => self.n * copies + 2,
            FamilyKind::CycleSpineSparse => self.n * copies + 2,
            FamilyKind::CycleSpineDense => (self.g - 2) * copies + 2,
        }
    }
}

/// Caterpillar with `n` degree-3 vertices and `n + 2` leaves, each
/// degree-3 vertex replaced by a triangle. Triangle `i` uses ids
/// `3i, 3i+1, 3i+2`; pendants are numbered from `3n`.
pub fn gen_triangle_tree(n: usize) -> Result<Graph, ExtremalError> {
    if n == 0 {
        return Err(ExtremalError::InvalidParams("triangle tree needs n >= 1".into()));
    }
    let mut b = GraphBuilder::new();
    let mut pendant = 3 * n;
    let mut add_pendant = |b: &mut GraphBuilder, corner: Vertex| {
        b.add_edge(corner, pendant).expect("fresh pendant");
        pendant += 1;
    };
    for i in 0..n {
        let (c0, c1, c2) = (3 * i, 3 * i + 1, 3 * i + 2);
        b.add_edge(c0, c1)?;
        b.add_edge(c1, c2)?;
        b.add_edge(c2, c0)?;
        if i == 0 {
            add_pendant(&mut b, c0);
        }
        add_pendant(&mut b, c1);
        if i + 1 == n {
            add_pendant(&mut b, c2);
        } else {
            b.add_edge(c2, 3 * (i + 1))?;
        }
    }
    Ok(b.build()?)
}

/// Cycle with spines of `k + 1` vertices. Cycle vertices are `0..len`,
/// spine vertices follow, spine by spine, base-adjacent vertex first.
pub fn gen_cycle_spine(g: usize, k: usize) -> Result<Graph, ExtremalError> {
    let spec = FamilySpec::cycle_spine(g, k)?;
    let (len, bases): (usize, Vec<Vertex>) = match spec.kind {
        FamilyKind::CycleSpineSparse => (2 * spec.n + 2, (0..=spec.n).map(|i| 2 * i).collect()),
        _ => (g, (0..g).collect()),
    };
    let cycle: Vec<Vertex> = (0..len).collect();
    let mut graph = Graph::cycle(&cycle)?;
    let mut next = len;
    for base in bases {
        let (with, _) = graph.with_pendant_path(base, k + 1, next)?;
        graph = with;
        next += k + 1;
    }
    debug_assert_eq!(graph.vertex_count(), spec.order());
    Ok(graph)
}

/// `copies` instances joined into a chain. Each new copy is attached at
/// the largest pendant of the chain so far: for the cycle families that
/// pendant is identified with the end of a spine of the copy and the `k + 1`
/// spine edges are contracted; for triangle trees two pendants are glued
/// and one of the two bridges at the junction is contracted.
pub fn glue_extremal_chain(spec: &FamilySpec, copies: usize) -> Result<Graph, ExtremalError> {
    if copies == 0 {
        return Err(ExtremalError::InvalidParams("chain needs at least one copy".into()));
    }
    let piece = spec.build()?;
    let mut chain = piece.clone();
    for _ in 1..copies {
        let a = chain.pendant_vertices().max().expect("families have pendants");
        match spec.kind {
            FamilyKind::TriangleTree => {
                let p = piece.pendant_vertices().min().expect("pendant");
                let corner = piece.neighbors(p).next().expect("pendant neighbour");
                let glued = glue(&chain, a, &piece, p)?;
                chain = contract_into(&glued.graph, glued.merged, glued.right(corner))?.graph;
            }
            _ => {
                let spine = find_spines(&piece).into_iter().next().expect("spines");
                let glued = glue(&chain, a, &piece, spine.end())?;
                let mut g = glued.graph.clone();
                let inward = spine.path.iter().rev().skip(1).chain(std::iter::once(&spine.base));
                for &v in inward {
                    g = contract_into(&g, glued.merged, glued.right(v))?.graph;
                }
                chain = g;
            }
        }
    }
    debug_assert_eq!(chain.vertex_count(), spec.chain_order(copies));
    Ok(chain)
}
