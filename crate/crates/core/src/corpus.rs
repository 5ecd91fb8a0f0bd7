//! Seeded random graphs under girth / degree / chain constraints, and
//! corpus-wide checks of the leaf bounds.

use std::fmt::{self, Write as _};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::bounds::{girth_parameter, BoundReport};
use crate::constructive::{construct_theorem1, construct_theorem2};
use crate::exact::{exact_mlst, SolverConfig, DEFAULT_NODE_BUDGET};
use crate::extremal::{glue_extremal_chain, FamilySpec};
use crate::graph::{Graph, GraphBuilder, Vertex};
use crate::io::graph_hash;
use crate::metrics::{chain_metric, girth, s_count, GraphMetrics};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CorpusError {
    #[error("no graph found with v={v}, min degree {min_degree}, girth >= {girth}, chain <= {ell:?}")]
    Infeasible {
        v: usize,
        min_degree: usize,
        girth: usize,
        ell: Option<usize>,
    },
}

/// Constraints for [`random_constrained_graph`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Constraints {
    pub v: usize,
    pub min_degree: usize,
    /// Every cycle has at least this length (3 means unconstrained).
    pub girth_at_least: usize,
    pub ell_at_most: Option<usize>,
}

const ATTEMPTS: usize = 400;

/// Fewest vertices of a graph with minimum degree `d >= 2` and girth `g`.
fn moore_bound(d: usize, g: usize) -> usize {
    let geometric: usize = (0..g / 2).map(|i| (d - 1).pow(i as u32)).sum();
    if g % 2 == 1 {
        1 + d * geometric
    } else {
        2 * geometric
    }
}

fn obviously_infeasible(c: &Constraints) -> bool {
    if c.v == 0 || c.min_degree >= c.v.max(2) {
        return true;
    }
    c.min_degree >= 2 && c.v < moore_bound(c.min_degree, c.girth_at_least.max(3))
}

/// Breadth-first distance, `None` when unreachable.
fn distance(adj: &[Vec<Vertex>], from: Vertex, to: Vertex) -> Option<usize> {
    let mut dist = vec![usize::MAX; adj.len()];
    dist[from] = 0;
    let mut queue = std::collections::VecDeque::from([from]);
    while let Some(x) = queue.pop_front() {
        if x == to {
            return Some(dist[x]);
        }
        for &y in &adj[x] {
            if dist[y] == usize::MAX {
                dist[y] = dist[x] + 1;
                queue.push_back(y);
            }
        }
    }
    None
}

fn attempt(c: &Constraints, rng: &mut ChaCha8Rng) -> Option<Graph> {
    let n = c.v;
    let mut b = GraphBuilder::new();
    let mut adj: Vec<Vec<Vertex>> = vec![Vec::new(); n];
    b.add_vertex(0);
    let mut order: Vec<Vertex> = (0..n).collect();
    order.shuffle(rng);
    for i in 1..n {
        let (x, y) = (order[i], order[rng.gen_range(0..i)]);
        b.add_edge(x, y).ok()?;
        adj[x].push(y);
        adj[y].push(x);
    }
    let long_enough = |b: &GraphBuilder, adj: &[Vec<Vertex>], x: Vertex, y: Vertex| {
        x != y && !b.has_edge(x, y) && distance(adj, x, y).is_none_or(|d| d + 1 >= c.girth_at_least)
    };
    let extra = rng.gen_range(0..=n);
    for _ in 0..extra {
        let (x, y) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if long_enough(&b, &adj, x, y) {
            b.add_edge(x, y).ok()?;
            adj[x].push(y);
            adj[y].push(x);
        }
    }
    for x in 0..n {
        let mut tries = 0;
        while adj[x].len() < c.min_degree && tries < 4 * n {
            tries += 1;
            let y = rng.gen_range(0..n);
            if long_enough(&b, &adj, x, y) {
                b.add_edge(x, y).ok()?;
                adj[x].push(y);
                adj[y].push(x);
            }
        }
    }
    let g = b.build().ok()?;
    satisfies(&g, c).then_some(g)
}

/// Whether `g` meets every constraint, measured from scratch.
pub fn satisfies(g: &Graph, c: &Constraints) -> bool {
    g.vertex_count() == c.v
        && g.is_connected()
        && g.min_degree() >= c.min_degree
        && girth(g).at_least(c.girth_at_least)
        && c.ell_at_most.is_none_or(|l| chain_metric(g) <= l)
}

/// Connected graph on vertices `0..v` meeting the constraints, by seeded
/// rejection sampling: a random tree, random extra edges that keep the
/// girth, then edges added at low-degree vertices.
pub fn random_constrained_graph(c: Constraints, seed: u64) -> Result<Graph, CorpusError> {
    let infeasible = CorpusError::Infeasible {
        v: c.v,
        min_degree: c.min_degree,
        girth: c.girth_at_least,
        ell: c.ell_at_most,
    };
    if obviously_infeasible(&c) {
        return Err(infeasible);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..ATTEMPTS).find_map(|_| attempt(&c, &mut rng)).ok_or(infeasible)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Theorem {
    /// `(s - 2)/4 + 2`.
    One,
    /// `alpha(g, k)(v - k - 2) + 2`.
    Two,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Exact,
    Construct,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Exact => "exact",
            Method::Construct => "construct",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CorpusParams {
    pub theorem: Theorem,
    pub count: usize,
    pub min_v: usize,
    pub max_v: usize,
    pub seed: u64,
    /// `None` picks exact search up to `exact_limit` vertices, construction above.
    pub method: Option<Method>,
    pub exact_limit: usize,
    pub node_budget: u64,
}

impl CorpusParams {
    pub fn new(theorem: Theorem, count: usize, max_v: usize, seed: u64) -> Self {
        CorpusParams {
            theorem,
            count,
            min_v: 2,
            max_v,
            seed,
            method: None,
            exact_limit: 14,
            node_budget: DEFAULT_NODE_BUDGET,
        }
    }

    pub fn with_method(mut self, method: Method) -> Self {
        self.method = Some(method);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusRecord {
    pub index: usize,
    pub hash: String,
    pub metrics: GraphMetrics,
    pub v: usize,
    pub e: usize,
    pub report: Option<BoundReport>,
    pub method: Method,
    pub note: Option<String>,
}

impl CorpusRecord {
    pub fn pass(&self) -> bool {
        self.report.as_ref().and_then(BoundReport::satisfied).unwrap_or(false)
    }

    pub fn tight(&self) -> bool {
        self.report.as_ref().and_then(BoundReport::tight).unwrap_or(false)
    }
}

impl fmt::Display for CorpusRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (kind, bound, achieved) = match &self.report {
            Some(r) => (
                r.kind.name(),
                r.value.to_string(),
                r.achieved.map_or("-".to_string(), |a| a.to_string()),
            ),
            None => ("-", "-".to_string(), "-".to_string()),
        };
        write!(
            f,
            "idx={} hash={} v={} e={} g={} ell={} s={} kind={} bound={} achieved={} method={} pass={} tight={}",
            self.index,
            self.hash,
            self.v,
            self.e,
            self.metrics.girth,
            self.metrics.chain_metric_ell,
            self.metrics.s_count,
            kind,
            bound,
            achieved,
            self.method,
            self.pass(),
            self.tight()
        )?;
        if let Some(note) = &self.note {
            write!(f, " note={:?}", note)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusReport {
    pub seed: u64,
    pub records: Vec<CorpusRecord>,
}

impl CorpusReport {
    pub fn passed(&self) -> usize {
        self.records.iter().filter(|r| r.pass()).count()
    }

    pub fn failed(&self) -> usize {
        self.records.len() - self.passed()
    }

    pub fn all_pass(&self) -> bool {
        self.failed() == 0
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            writeln!(out, "{r}").unwrap();
        }
        writeln!(
            out,
            "total={} pass={} fail={} tight={} seed={}",
            self.records.len(),
            self.passed(),
            self.failed(),
            self.records.iter().filter(|r| r.tight()).count(),
            self.seed
        )
        .unwrap();
        out
    }
}

/// The `index`-th graph of a corpus. For the girth/chain bound some
/// instances ask for larger girth or shorter chains to vary the parameters.
pub fn corpus_graph(params: &CorpusParams, index: usize) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    rng.set_stream(index as u64);
    let v = rng.gen_range(params.min_v..=params.max_v);
    let base = Constraints {
        v,
        min_degree: 1,
        girth_at_least: 3,
        ell_at_most: None,
    };
    let wanted = match params.theorem {
        Theorem::One => Constraints {
            min_degree: *[1, 1, 2, 3].choose(&mut rng).expect("nonempty"),
            ..base
        },
        Theorem::Two => Constraints {
            min_degree: *[1, 2, 2].choose(&mut rng).expect("nonempty"),
            girth_at_least: *[3, 4, 5, 6].choose(&mut rng).expect("nonempty"),
            ell_at_most: Some(rng.gen_range(1..=3)),
            ..base
        },
    };
    let seed = rng.gen();
    random_constrained_graph(wanted, seed)
        .or_else(|_| random_constrained_graph(base, seed))
        .expect("unconstrained connected graphs always exist")
}

/// Bound report for `g` with the leaf count filled in by `method`.
/// Exact results cut short by the node budget count as failures.
pub fn evaluate(g: &Graph, theorem: Theorem, method: Method, cfg: SolverConfig) -> Result<BoundReport, String> {
    let metrics = GraphMetrics::of(g);
    let k = metrics.chain_metric_ell.max(1);
    let report = match theorem {
        Theorem::One => BoundReport::theorem1(s_count(g)),
        Theorem::Two => BoundReport::theorem2(g.vertex_count(), girth_parameter(metrics.girth), k)
            .map_err(|e| e.to_string())?,
    };
    let leaves = match (method, theorem) {
        (Method::Exact, _) => {
            let r = exact_mlst(g, cfg).map_err(|e| e.to_string())?;
            if !r.optimal {
                return Err(format!("node budget exhausted, best found {}", r.u_value));
            }
            r.u_value
        }
        (Method::Construct, Theorem::One) => {
            let (t, trace) = construct_theorem1(g).map_err(|e| e.to_string())?;
            trace.replay(g).map_err(|e| e.to_string())?;
            t.leaf_count()
        }
        (Method::Construct, Theorem::Two) => {
            let (t, trace) = construct_theorem2(g, k).map_err(|e| e.to_string())?;
            trace.replay(g).map_err(|e| e.to_string())?;
            t.leaf_count()
        }
    };
    Ok(report.with_achieved(leaves))
}

fn record(index: usize, g: &Graph, theorem: Theorem, method: Method, cfg: SolverConfig) -> CorpusRecord {
    let (report, note) = match evaluate(g, theorem, method, cfg) {
        Ok(r) => (Some(r), None),
        Err(e) => (None, Some(e)),
    };
    CorpusRecord {
        index,
        hash: graph_hash(g),
        metrics: GraphMetrics::of(g),
        v: g.vertex_count(),
        e: g.edge_count(),
        report,
        method,
        note,
    }
}

/// Checks the bound on every corpus graph. Instances run in parallel; the
/// report is ordered by index.
pub fn verify_corpus(params: &CorpusParams) -> CorpusReport {
    let records = (0..params.count)
        .into_par_iter()
        .map(|i| {
            let g = corpus_graph(params, i);
            let method = params.method.unwrap_or(if g.vertex_count() <= params.exact_limit {
                Method::Exact
            } else {
                Method::Construct
            });
            record(i, &g, params.theorem, method, SolverConfig::with_budget(params.node_budget))
        })
        .collect();
    CorpusReport {
        seed: params.seed,
        records,
    }
}

/// Family instances and chain lengths checked by the extremal suite.
pub fn extremal_suite() -> Vec<(FamilySpec, usize)> {
    let mut out: Vec<(FamilySpec, usize)> = (1..=5)
        .map(|n| (FamilySpec::triangle_tree(n).expect("n >= 1"), 1))
        .collect();
    for (g, k) in [(3, 1), (3, 2), (4, 2), (5, 3), (5, 4), (5, 1), (5, 2), (6, 2), (7, 1)] {
        out.push((FamilySpec::cycle_spine(g, k).expect("valid"), 1));
    }
    out.push((FamilySpec::triangle_tree(1).expect("n >= 1"), 3));
    out.push((FamilySpec::cycle_spine(3, 1).expect("valid"), 3));
    out.push((FamilySpec::cycle_spine(6, 2).expect("valid"), 2));
    out
}

/// Exact check of the extremal families: every record should be tight.
pub fn verify_extremal(instances: &[(FamilySpec, usize)], cfg: SolverConfig) -> CorpusReport {
    let records = instances
        .par_iter()
        .enumerate()
        .map(|(i, (spec, copies))| {
            let g = glue_extremal_chain(spec, *copies).expect("valid family");
            let theorem = match spec.kind {
                crate::extremal::FamilyKind::TriangleTree => Theorem::One,
                _ => Theorem::Two,
            };
            record(i, &g, theorem, Method::Exact, cfg)
        })
        .collect();
    CorpusReport { seed: 0, records }
}
