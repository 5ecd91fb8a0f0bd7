//! Girth, degree-2 chain length and the count of vertices of degree other than 2.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Serialize, Serializer};

use crate::graph::{Graph, Vertex};

/// Length of a shortest cycle, or `Acyclic` for forests.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Girth {
    Finite(usize),
    Acyclic,
}

impl Girth {
    pub fn finite(self) -> Option<usize> {
        match self {
            Girth::Finite(g) => Some(g),
            Girth::Acyclic => None,
        }
    }

    /// Whether every cycle has length at least `g` (vacuous for forests).
    pub fn at_least(self, g: usize) -> bool {
        match self {
            Girth::Finite(x) => x >= g,
            Girth::Acyclic => true,
        }
    }
}

impl fmt::Display for Girth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Girth::Finite(g) => write!(f, "{g}"),
            Girth::Acyclic => f.write_str("acyclic"),
        }
    }
}

impl Serialize for Girth {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Girth::Finite(g) => s.serialize_u64(*g as u64),
            Girth::Acyclic => s.serialize_str("acyclic"),
        }
    }
}

/// Shortest cycle length via breadth-first search from every vertex.
pub fn girth(g: &Graph) -> Girth {
    if g.is_forest() {
        return Girth::Acyclic;
    }
    let mut best = usize::MAX;
    for root in g.vertices() {
        let mut dist: BTreeMap<Vertex, usize> = BTreeMap::from([(root, 0)]);
        let mut parent: BTreeMap<Vertex, Vertex> = BTreeMap::new();
        let mut queue = VecDeque::from([root]);
        while let Some(x) = queue.pop_front() {
            let dx = dist[&x];
            if 2 * dx >= best {
                break;
            }
            for y in g.neighbors(x) {
                match dist.get(&y) {
                    None => {
                        dist.insert(y, dx + 1);
                        parent.insert(y, x);
                        queue.push_back(y);
                    }
                    Some(&dy) if parent.get(&x) != Some(&y) => {
                        best = best.min(dx + dy + 1);
                    }
                    Some(_) => {}
                }
            }
        }
    }
    Girth::Finite(best)
}

/// Largest number of vertices in a run of successively adjacent degree-2
/// vertices. A component that is a cycle counts all of its vertices.
pub fn chain_metric(g: &Graph) -> usize {
    let twos: BTreeSet<Vertex> = g.vertices().filter(|&v| g.degree(v) == 2).collect();
    let mut seen = BTreeSet::new();
    let mut best = 0;
    for &start in &twos {
        if !seen.insert(start) {
            continue;
        }
        let mut size = 1;
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            for y in g.neighbors(x) {
                if twos.contains(&y) && seen.insert(y) {
                    size += 1;
                    stack.push(y);
                }
            }
        }
        best = best.max(size);
    }
    best
}

/// Number of vertices whose degree is not 2.
pub fn s_count(g: &Graph) -> usize {
    g.vertices().filter(|&v| g.degree(v) != 2).count()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GraphMetrics {
    pub girth: Girth,
    pub chain_metric_ell: usize,
    pub s_count: usize,
    pub min_degree: usize,
}

impl GraphMetrics {
    pub fn of(g: &Graph) -> Self {
        GraphMetrics {
            girth: girth(g),
            chain_metric_ell: chain_metric(g),
            s_count: s_count(g),
            min_degree: g.min_degree(),
        }
    }
}
