//! Blocks, cutpoints, bridges and pendant spines.

use std::collections::{BTreeMap, BTreeSet};

use crate::graph::{Edge, Graph, GraphError, Vertex};

/// A maximal biconnected subgraph. A bridge is a block with one edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub vertices: BTreeSet<Vertex>,
    pub edges: Vec<Edge>,
    /// Vertices of the block that are cutpoints of the whole graph.
    pub boundary: BTreeSet<Vertex>,
    pub interior: BTreeSet<Vertex>,
}

impl Block {
    pub fn is_large(&self) -> bool {
        self.interior.len() > self.boundary.len()
    }

    pub fn is_empty(&self) -> bool {
        self.interior.is_empty()
    }

    pub fn is_bridge(&self) -> bool {
        self.edges.len() == 1
    }

    pub fn order(&self) -> usize {
        self.vertices.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockDecomposition {
    pub blocks: Vec<Block>,
    pub cutpoints: BTreeSet<Vertex>,
    pub bridges: BTreeSet<Edge>,
}

impl BlockDecomposition {
    pub fn large_blocks(&self) -> impl Iterator<Item = &Block> {
        self.blocks.iter().filter(|b| b.is_large())
    }

    pub fn has_large_block(&self) -> bool {
        self.blocks.iter().any(Block::is_large)
    }
}

const UNSEEN: usize = usize::MAX;

/// Biconnected components by an iterative lowpoint search.
pub fn decompose_blocks(g: &Graph) -> Result<BlockDecomposition, GraphError> {
    g.ensure_connected()?;
    let ids: Vec<Vertex> = g.vertices().collect();
    let index: BTreeMap<Vertex, usize> = ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let adj: Vec<Vec<usize>> = ids.iter().map(|&v| g.neighbors(v).map(|w| index[&w]).collect()).collect();
    let n = ids.len();

    if n == 1 {
        let only = BTreeSet::from([ids[0]]);
        return Ok(BlockDecomposition {
            blocks: vec![Block {
                vertices: only.clone(),
                edges: Vec::new(),
                boundary: BTreeSet::new(),
                interior: only,
            }],
            cutpoints: BTreeSet::new(),
            bridges: BTreeSet::new(),
        });
    }

    let mut disc = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut parent = vec![UNSEEN; n];
    let mut time = 0;
    let mut edge_stack: Vec<(usize, usize)> = Vec::new();
    let mut raw_blocks: Vec<Vec<(usize, usize)>> = Vec::new();
    let mut is_cut = vec![false; n];
    let mut root_children = 0;

    disc[0] = time;
    low[0] = time;
    time += 1;
    let mut stack: Vec<(usize, usize)> = vec![(0, 0)];
    while let Some(top) = stack.last_mut() {
        let (v, i) = *top;
        if i < adj[v].len() {
            top.1 += 1;
            let w = adj[v][i];
            if disc[w] == UNSEEN {
                parent[w] = v;
                disc[w] = time;
                low[w] = time;
                time += 1;
                edge_stack.push((v, w));
                stack.push((w, 0));
            } else if w != parent[v] && disc[w] < disc[v] {
                low[v] = low[v].min(disc[w]);
                edge_stack.push((v, w));
            }
        } else {
            stack.pop();
            if let Some(&(p, _)) = stack.last() {
                low[p] = low[p].min(low[v]);
                if low[v] >= disc[p] {
                    if p == 0 {
                        root_children += 1;
                    } else {
                        is_cut[p] = true;
                    }
                    let mut block = Vec::new();
                    while let Some(e) = edge_stack.pop() {
                        block.push(e);
                        if e == (p, v) {
                            break;
                        }
                    }
                    raw_blocks.push(block);
                }
            }
        }
    }
    if root_children >= 2 {
        is_cut[0] = true;
    }

    let cutpoints: BTreeSet<Vertex> = (0..n).filter(|&i| is_cut[i]).map(|i| ids[i]).collect();
    let mut blocks: Vec<Block> = raw_blocks
        .into_iter()
        .map(|raw| {
            let mut edges: Vec<Edge> = raw.iter().map(|&(a, b)| Edge::new(ids[a], ids[b])).collect();
            edges.sort();
            let vertices: BTreeSet<Vertex> = edges.iter().flat_map(|e| [e.lo(), e.hi()]).collect();
            let boundary: BTreeSet<Vertex> = vertices.intersection(&cutpoints).copied().collect();
            let interior = vertices.difference(&boundary).copied().collect();
            Block {
                vertices,
                edges,
                boundary,
                interior,
            }
        })
        .collect();
    blocks.sort_by(|a, b| a.edges[0].cmp(&b.edges[0]));
    let bridges = blocks.iter().filter(|b| b.is_bridge()).map(|b| b.edges[0]).collect();
    Ok(BlockDecomposition {
        blocks,
        cutpoints,
        bridges,
    })
}

/// A pendant path hanging off `base`: `path[0]` is adjacent to `base`,
/// inner path vertices have degree 2 and the last one has degree 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Spine {
    pub path: Vec<Vertex>,
    pub base: Vertex,
}

impl Spine {
    pub fn len(&self) -> usize {
        self.path.len()
    }

    pub fn is_empty(&self) -> bool {
        self.path.is_empty()
    }

    pub fn end(&self) -> Vertex {
        *self.path.last().expect("spines are nonempty")
    }
}

/// All maximal spines, ordered by base then by the vertex next to the base.
/// A graph that is itself a path has none.
pub fn find_spines(g: &Graph) -> Vec<Spine> {
    let mut spines = Vec::new();
    for p in g.pendant_vertices() {
        let mut path = vec![p];
        let mut prev = p;
        let mut cur = g.neighbors(p).next().expect("pendant has a neighbour");
        loop {
            match g.degree(cur) {
                1 => return Vec::new(),
                2 => {
                    let next = g.neighbors(cur).find(|&w| w != prev).expect("degree two");
                    path.push(cur);
                    prev = cur;
                    cur = next;
                }
                _ => break,
            }
        }
        path.reverse();
        spines.push(Spine { path, base: cur });
    }
    spines.sort_by_key(|s| (s.base, s.path[0]));
    spines
}

/// Whether `comp` (a component of `g - a`) is a spine with base `a`: it
/// induces a path and `a` is joined by a single edge to one end of it.
pub fn is_spine_component(g: &Graph, a: Vertex, comp: &BTreeSet<Vertex>) -> bool {
    let attach: Vec<Vertex> = g.neighbors(a).filter(|w| comp.contains(w)).collect();
    if attach.len() != 1 {
        return false;
    }
    let inner_degree = |v: Vertex| g.neighbors(v).filter(|w| comp.contains(w)).count();
    let edges: usize = comp.iter().map(|&v| inner_degree(v)).sum::<usize>() / 2;
    edges + 1 == comp.len()
        && comp.iter().all(|&v| inner_degree(v) <= 2)
        && inner_degree(attach[0]) <= 1
}

/// Components of `g - a`, ordered by smallest vertex.
pub fn components_without(g: &Graph, a: Vertex) -> Vec<BTreeSet<Vertex>> {
    g.components_avoiding(&BTreeSet::from([a]))
}

/// Whether cutpoint `a` only detaches a single spine (two components, one
/// of which is a spine based at `a`).
pub fn is_inessential(g: &Graph, a: Vertex) -> bool {
    let comps = components_without(g, a);
    comps.len() == 2 && comps.iter().any(|c| is_spine_component(g, a, c))
}

/// Cutpoints that do more than detach a single spine.
pub fn essential_cutpoints(g: &Graph) -> Result<BTreeSet<Vertex>, GraphError> {
    let dec = decompose_blocks(g)?;
    Ok(dec
        .cutpoints
        .iter()
        .copied()
        .filter(|&a| !is_inessential(g, a))
        .collect())
}
