//! Acceptance suite. Each test prints one `criterion N PASS|FAIL` line
//! (written straight to stdout so it shows without `--nocapture`).
//!
//! Bounds, girth, chain length, blocks and cutpoints are recomputed here
//! from scratch instead of trusting the library's own metrics.

use std::collections::{BTreeSet, VecDeque};
use std::io::Write;
use std::time::{Duration, Instant};

use leafspan::bounds::{beta, beta_prime};
use leafspan::constructive::{construct_theorem1, construct_theorem2, remove_large_blocks};
use leafspan::corpus::corpus_graph;
use leafspan::extremal::{gen_cycle_spine, gen_triangle_tree};
use leafspan::{
    alpha, bound_theorem1, bound_theorem2, contract_edge, exact_mlst, glue, random_constrained_graph, Constraints,
    CorpusParams, Edge, Graph, Rational, SolverConfig, SpanningTree, Theorem, Vertex,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

fn report(id: u32, name: &str, limit: Option<Duration>, run: impl FnOnce() -> Result<String, String>) {
    let start = Instant::now();
    let outcome = run();
    let elapsed = start.elapsed();
    let outcome = match (outcome, limit) {
        (Ok(_), Some(l)) if elapsed > l => Err(format!("took {elapsed:?}, limit {l:?}")),
        (o, _) => o,
    };
    let (flag, detail) = match &outcome {
        Ok(d) => ("PASS", d.as_str()),
        Err(d) => ("FAIL", d.as_str()),
    };
    let line = format!("criterion {id} {flag} {name}: {detail} ({:.3}s)\n", elapsed.as_secs_f64());
    std::io::stdout().lock().write_all(line.as_bytes()).unwrap();
    if let Err(e) = outcome {
        panic!("criterion {id} failed: {e}");
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn exact(g: &Graph) -> usize {
    let r = exact_mlst(g, SolverConfig::default()).expect("connected input");
    assert!(r.optimal, "node budget exhausted");
    r.u_value
}

// ---- independent oracles ----

fn adjacency(g: &Graph) -> Vec<Vec<usize>> {
    let ids: Vec<Vertex> = g.vertices().collect();
    let idx = |v: Vertex| ids.binary_search(&v).unwrap();
    let mut adj = vec![Vec::new(); ids.len()];
    for e in g.edges() {
        let (a, b) = (idx(e.lo()), idx(e.hi()));
        adj[a].push(b);
        adj[b].push(a);
    }
    adj
}

fn oracle_s(g: &Graph) -> usize {
    adjacency(g).iter().filter(|n| n.len() != 2).count()
}

/// Shortest cycle by BFS from every vertex; `None` for forests.
fn oracle_girth(g: &Graph) -> Option<usize> {
    let adj = adjacency(g);
    let mut best = None::<usize>;
    for s in 0..adj.len() {
        let mut dist = vec![usize::MAX; adj.len()];
        let mut parent = vec![usize::MAX; adj.len()];
        dist[s] = 0;
        let mut q = VecDeque::from([s]);
        while let Some(x) = q.pop_front() {
            for &y in &adj[x] {
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    parent[y] = x;
                    q.push_back(y);
                } else if parent[x] != y {
                    let c = dist[x] + dist[y] + 1;
                    best = Some(best.map_or(c, |b| b.min(c)));
                }
            }
        }
    }
    best
}

/// Largest connected group of degree-2 vertices.
fn oracle_ell(g: &Graph) -> usize {
    let adj = adjacency(g);
    let two: Vec<bool> = adj.iter().map(|n| n.len() == 2).collect();
    let mut seen = vec![false; adj.len()];
    let mut best = 0;
    for s in 0..adj.len() {
        if !two[s] || seen[s] {
            continue;
        }
        seen[s] = true;
        let mut stack = vec![s];
        let mut size = 0;
        while let Some(x) = stack.pop() {
            size += 1;
            for &y in &adj[x] {
                if two[y] && !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        best = best.max(size);
    }
    best
}

/// Connected components of the graph with vertex `skip` deleted, as labels.
fn labels_without(adj: &[Vec<usize>], skip: Option<usize>, dropped: &BTreeSet<(usize, usize)>) -> Vec<usize> {
    let mut label = vec![usize::MAX; adj.len()];
    let mut next = 0;
    for s in 0..adj.len() {
        if Some(s) == skip || label[s] != usize::MAX {
            continue;
        }
        label[s] = next;
        let mut stack = vec![s];
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if Some(y) != skip && label[y] == usize::MAX && !dropped.contains(&(x.min(y), x.max(y))) {
                    label[y] = next;
                    stack.push(y);
                }
            }
        }
        next += 1;
    }
    label
}

fn oracle_connected(g: &Graph) -> bool {
    let adj = adjacency(g);
    labels_without(&adj, None, &BTreeSet::new()).iter().all(|&l| l == 0)
}

/// `alpha = p / q` from the closed form with `n = ceil(g/2) - 1`.
fn oracle_alpha(g: i64, k: i64) -> (i64, i64) {
    let n = (g + 1) / 2 - 1;
    if k < g - 2 {
        (n, n * (k + 3) + 1)
    } else {
        (g - 2, (g - 1) * (k + 2))
    }
}

/// Whether `leaves` meets the girth/chain bound for this graph.
fn oracle_theorem2_ok(g: &Graph, leaves: usize) -> (bool, usize) {
    let k = oracle_ell(g).max(1) as i64;
    let gp = oracle_girth(g).unwrap_or(3) as i64;
    let (p, q) = oracle_alpha(gp, k);
    let v = g.vertex_count() as i64;
    ((leaves as i64 - 2) * q >= p * (v - k - 2), k as usize)
}

fn oracle_theorem1_ok(g: &Graph, leaves: usize) -> bool {
    4 * leaves >= oracle_s(g) + 6
}

fn oracle_tree_ok(g: &Graph, t: &SpanningTree) -> Result<usize, String> {
    let edges = t.edges();
    if edges.len() + 1 != g.vertex_count() {
        return Err(format!("{} edges for {} vertices", edges.len(), g.vertex_count()));
    }
    if let Some(e) = edges.iter().find(|e| !g.has_edge(e.lo(), e.hi())) {
        return Err(format!("{e} not in host"));
    }
    let tg = Graph::new(g.vertices(), edges.iter().map(|e| (e.lo(), e.hi()))).map_err(|e| e.to_string())?;
    if !oracle_connected(&tg) {
        return Err("tree is disconnected".into());
    }
    let leaves = tg.vertices().filter(|&v| tg.degree(v) == 1).count();
    if leaves != t.leaf_count() {
        return Err(format!("leaf count {} but {} leaves", t.leaf_count(), leaves));
    }
    Ok(leaves)
}

/// Random connected graph on `0..v`: a random tree plus extra edges.
fn random_connected(rng: &mut ChaCha8Rng, v: usize, offset: Vertex) -> Vec<(Vertex, Vertex)> {
    let mut edges = BTreeSet::new();
    for i in 1..v {
        edges.insert((rng.gen_range(0..i), i));
    }
    let extra = rng.gen_range(0..=v);
    for _ in 0..extra {
        let (a, b) = (rng.gen_range(0..v), rng.gen_range(0..v));
        if a != b {
            edges.insert((a.min(b), a.max(b)));
        }
    }
    edges.into_iter().map(|(a, b)| (a + offset, b + offset)).collect()
}

fn graph_of(v: usize, edges: Vec<(Vertex, Vertex)>) -> Graph {
    Graph::new(0..v, edges).unwrap()
}

// ---- criteria ----

#[test]
fn criterion_01_triangle_trees() {
    report(1, "triangle trees attain (s-2)/4+2", Some(Duration::from_secs(10)), || {
        let mut seen = Vec::new();
        for n in 1..=5usize {
            let g = gen_triangle_tree(n).map_err(|e| e.to_string())?;
            let u = exact(&g);
            ensure(g.vertex_count() == 4 * n + 2 && oracle_s(&g) == 4 * n + 2, || format!("n={n}: wrong shape"))?;
            ensure(u == n + 2, || format!("n={n}: u={u}"))?;
            ensure(bound_theorem1(4 * n + 2) == Rational::from_integer(u as i64), || {
                format!("n={n}: bound {} != {u}", bound_theorem1(4 * n + 2))
            })?;
            seen.push(format!("n={n}:u={u}"));
        }
        Ok(seen.join(" "))
    });
}

fn cycle_spine_case(g: usize, k: usize, expected: usize) -> Result<String, String> {
    let graph = gen_cycle_spine(g, k).map_err(|e| e.to_string())?;
    let v = graph.vertex_count();
    let u = exact(&graph);
    ensure(oracle_girth(&graph).is_some_and(|c| c >= g), || format!("(g={g},k={k}): girth {:?}", oracle_girth(&graph)))?;
    ensure(oracle_ell(&graph) <= k, || format!("(g={g},k={k}): chain too long"))?;
    ensure(u == expected, || format!("(g={g},k={k}): u={u}, expected {expected}"))?;
    let bound = bound_theorem2(v, g, k).map_err(|e| e.to_string())?;
    ensure(bound == Rational::from_integer(u as i64), || format!("(g={g},k={k}): bound {bound} != {u}"))?;
    let (p, q) = oracle_alpha(g as i64, k as i64);
    ensure((u as i64 - 2) * q == p * (v as i64 - k as i64 - 2), || format!("(g={g},k={k}): oracle bound differs"))?;
    Ok(format!("(g={g},k={k}):v={v},u={u}"))
}

#[test]
fn criterion_02_dense_cycle_spines() {
    report(2, "dense cycle-spine graphs attain the bound", Some(Duration::from_secs(60)), || {
        let mut seen = Vec::new();
        for (g, k) in [(3, 1), (3, 2), (4, 2), (5, 3), (5, 4)] {
            ensure(g * (k + 2) <= 30, || "instance too large".into())?;
            let graph = gen_cycle_spine(g, k).map_err(|e| e.to_string())?;
            ensure(graph.vertex_count() == g * (k + 2), || format!("(g={g},k={k}): v != g(k+2)"))?;
            seen.push(cycle_spine_case(g, k, g)?);
        }
        Ok(seen.join(" "))
    });
}

#[test]
fn criterion_03_sparse_cycle_spines() {
    report(3, "sparse cycle-spine graphs attain the bound", Some(Duration::from_secs(60)), || {
        let mut seen = Vec::new();
        for (g, k) in [(5usize, 1), (5, 2), (6, 2), (7, 1)] {
            let n = g.div_ceil(2) - 1;
            seen.push(cycle_spine_case(g, k, n + 2)?);
        }
        Ok(seen.join(" "))
    });
}

#[test]
fn criterion_04_gluing_pendants() {
    report(4, "gluing at pendant vertices: u = u1 + u2 - 2", None, || {
        let mut rng = ChaCha8Rng::seed_from_u64(0x1e44a1);
        let mut instances = Vec::new();
        for _ in 0..100 {
            let side = |rng: &mut ChaCha8Rng| {
                let core = rng.gen_range(1..=6);
                let mut edges = random_connected(rng, core, 0);
                edges.push((rng.gen_range(0..core), core));
                (graph_of(core + 1, edges), core)
            };
            instances.push((side(&mut rng), side(&mut rng)));
        }
        let bad: Vec<String> = instances
            .par_iter()
            .enumerate()
            .filter_map(|(i, ((g1, x1), (g2, x2)))| {
                let glued = glue(g1, *x1, g2, *x2).unwrap();
                let (u1, u2, u) = (exact(g1), exact(g2), exact(&glued.graph));
                (u + 2 != u1 + u2).then(|| format!("pair {i}: {u} vs {u1}+{u2}-2"))
            })
            .collect();
        ensure(bad.is_empty(), || bad.join("; "))?;
        Ok("100/100 pairs".into())
    });
}

#[test]
fn criterion_05_bridge_contraction() {
    report(5, "contracting a non-pendant bridge keeps u", None, || {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5e11);
        let mut instances = Vec::new();
        while instances.len() < 100 {
            let v1 = rng.gen_range(2..=7);
            let v2 = rng.gen_range(2..=9 - v1);
            let mut edges = random_connected(&mut rng, v1, 0);
            edges.extend(random_connected(&mut rng, v2, v1));
            let bridge = (rng.gen_range(0..v1), rng.gen_range(v1..v1 + v2));
            edges.push(bridge);
            instances.push((graph_of(v1 + v2, edges), Edge::new(bridge.0, bridge.1)));
        }
        let bad: Vec<String> = instances
            .par_iter()
            .enumerate()
            .filter_map(|(i, (g, e))| {
                assert!(g.degree(e.lo()) >= 2 && g.degree(e.hi()) >= 2);
                let adj = adjacency(g);
                let cut = BTreeSet::from([(e.lo(), e.hi())]);
                assert!(labels_without(&adj, None, &cut).iter().any(|&l| l != 0), "not a bridge");
                let h = contract_edge(g, *e).unwrap().graph;
                let (a, b) = (exact(g), exact(&h));
                (a != b).then(|| format!("instance {i}: {a} -> {b}"))
            })
            .collect();
        ensure(bad.is_empty(), || bad.join("; "))?;
        Ok("100/100 instances".into())
    });
}

const CORPUS_SIZE: usize = 500;
const CORPUS_SEED_1: u64 = 20_240_601;
const CORPUS_SEED_2: u64 = 20_240_602;

fn corpus(theorem: Theorem, seed: u64) -> Vec<Graph> {
    let params = CorpusParams::new(theorem, CORPUS_SIZE, 12, seed);
    (0..CORPUS_SIZE).into_par_iter().map(|i| corpus_graph(&params, i)).collect()
}

#[test]
fn criterion_06_theorem1_corpus() {
    report(6, "exact u >= (s-2)/4+2 on 500 graphs", Some(Duration::from_secs(300)), || {
        let graphs = corpus(Theorem::One, CORPUS_SEED_1);
        let bad: Vec<String> = graphs
            .par_iter()
            .enumerate()
            .filter_map(|(i, g)| {
                assert!(oracle_connected(g) && (2..=12).contains(&g.vertex_count()));
                let u = exact(g);
                (!oracle_theorem1_ok(g, u)).then(|| format!("#{i}: u={u} s={}", oracle_s(g)))
            })
            .collect();
        ensure(bad.is_empty(), || bad.join("; "))?;
        let tight = graphs.iter().filter(|g| 4 * exact(g) == oracle_s(g) + 6).count();
        Ok(format!("{CORPUS_SIZE}/{CORPUS_SIZE} pass, {tight} tight"))
    });
}

#[test]
fn criterion_07_theorem2_corpus() {
    report(7, "exact u >= alpha(g,k)(v-k-2)+2 on 500 graphs", Some(Duration::from_secs(300)), || {
        let graphs = corpus(Theorem::Two, CORPUS_SEED_2);
        let bad: Vec<String> = graphs
            .par_iter()
            .enumerate()
            .filter_map(|(i, g)| {
                assert!(oracle_connected(g) && g.vertex_count() <= 12);
                let u = exact(g);
                let (ok, k) = oracle_theorem2_ok(g, u);
                (!ok).then(|| format!("#{i}: u={u} v={} g={:?} k={k}", g.vertex_count(), oracle_girth(g)))
            })
            .collect();
        ensure(bad.is_empty(), || bad.join("; "))?;
        let trees = graphs.iter().filter(|g| oracle_girth(g).is_none()).count();
        let girths: BTreeSet<usize> = graphs.iter().filter_map(oracle_girth).collect();
        Ok(format!("{CORPUS_SIZE}/{CORPUS_SIZE} pass, {trees} trees, girths {girths:?}"))
    });
}

#[test]
fn criterion_08_constructive_certificates() {
    report(8, "constructed trees are valid, meet the bounds and replay", None, || {
        let one = corpus(Theorem::One, CORPUS_SEED_1);
        let two = corpus(Theorem::Two, CORPUS_SEED_2);
        let mut bad: Vec<String> = one
            .par_iter()
            .enumerate()
            .filter_map(|(i, g)| {
                let check = || -> Result<(), String> {
                    let (t, trace) = construct_theorem1(g).map_err(|e| e.to_string())?;
                    let leaves = oracle_tree_ok(g, &t)?;
                    ensure(oracle_theorem1_ok(g, leaves), || format!("{leaves} leaves below bound"))?;
                    let again = trace.replay(g).map_err(|e| e.to_string())?;
                    ensure(again.edges() == t.edges(), || "replay differs".into())
                };
                check().err().map(|e| format!("first #{i}: {e}"))
            })
            .collect();
        let more: Vec<String> = two.par_iter().enumerate().filter_map(|(i, g)| {
            let check = || -> Result<(), String> {
                let k = oracle_ell(g).max(1);
                let (t, trace) = construct_theorem2(g, k).map_err(|e| e.to_string())?;
                let leaves = oracle_tree_ok(g, &t)?;
                ensure(oracle_theorem2_ok(g, leaves).0, || format!("{leaves} leaves below bound"))?;
                let again = trace.replay(g).map_err(|e| e.to_string())?;
                ensure(again.edges() == t.edges(), || "replay differs".into())
            };
            check().err().map(|e| format!("second #{i}: {e}"))
        }).collect();
        bad.extend(more);
        ensure(bad.is_empty(), || bad.join("; "))?;
        Ok(format!("{} certificates, {} replays", 2 * CORPUS_SIZE, 2 * CORPUS_SIZE))
    });
}

/// Blocks as edge classes: two edges share a block unless deleting some
/// vertex separates what is left of them.
fn oracle_blocks(g: &Graph) -> Vec<BTreeSet<usize>> {
    let adj = adjacency(g);
    let n = adj.len();
    let edges: Vec<(usize, usize)> =
        (0..n).flat_map(|a| adj[a].iter().filter(move |&&b| a < b).map(move |&b| (a, b))).collect();
    let cuts: Vec<Vec<usize>> = (0..n).map(|x| labels_without(&adj, Some(x), &BTreeSet::new())).collect();
    let same = |e: (usize, usize), f: (usize, usize)| {
        (0..n).all(|x| {
            let ends: Vec<usize> = [e.0, e.1, f.0, f.1].into_iter().filter(|&y| y != x).collect();
            ends.iter().all(|&y| cuts[x][y] == cuts[x][ends[0]])
        })
    };
    let mut classes: Vec<Vec<(usize, usize)>> = Vec::new();
    for &e in &edges {
        match classes.iter_mut().find(|c| same(c[0], e)) {
            Some(c) => c.push(e),
            None => classes.push(vec![e]),
        }
    }
    classes.into_iter().map(|c| c.into_iter().flat_map(|(a, b)| [a, b]).collect()).collect()
}

fn oracle_cutpoints(g: &Graph) -> BTreeSet<usize> {
    let adj = adjacency(g);
    (0..adj.len())
        .filter(|&x| {
            let l = labels_without(&adj, Some(x), &BTreeSet::new());
            l.iter().enumerate().any(|(y, &c)| y != x && c != 0 && c != usize::MAX)
        })
        .collect()
}

fn check_removal(g: &Graph, f: &BTreeSet<Edge>) -> Result<(), String> {
    ensure(f.iter().all(|e| g.has_edge(e.lo(), e.hi())), || "F is not a subset of E".into())?;
    let h = Graph::new(g.vertices(), g.edges().filter(|e| !f.contains(e)).map(|e| (e.lo(), e.hi()))).unwrap();
    ensure(oracle_connected(&h), || "G - F is disconnected".into())?;
    let cuts = oracle_cutpoints(&h);
    for block in oracle_blocks(&h) {
        let boundary = block.iter().filter(|x| cuts.contains(x)).count();
        ensure(block.len() - boundary <= boundary, || format!("large block {block:?}"))?;
    }
    for e in h.edges() {
        let (x, y) = (e.lo(), e.hi());
        if h.degree(x) == 2 && h.degree(y) == 2 {
            ensure(g.degree(x) == 2 && g.degree(y) == 2, || format!("new degree-2 pair {x},{y}"))?;
        }
    }
    Ok(())
}

#[test]
fn criterion_09_large_block_removal() {
    report(9, "large-block removal postconditions on 200 graphs", None, || {
        let mut rng = ChaCha8Rng::seed_from_u64(0xb10c);
        let graphs: Vec<Graph> = (0..200)
            .map(|_| {
                let c = Constraints {
                    v: rng.gen_range(3..=10),
                    min_degree: rng.gen_range(1..=3),
                    girth_at_least: 3,
                    ell_at_most: None,
                };
                random_constrained_graph(c, rng.gen())
                    .or_else(|_| random_constrained_graph(Constraints { min_degree: 1, ..c }, rng.gen()))
                    .unwrap()
            })
            .collect();
        let bad: Vec<String> = graphs
            .par_iter()
            .enumerate()
            .filter_map(|(i, g)| {
                let f = match remove_large_blocks(g) {
                    Ok(f) => f,
                    Err(e) => return Some(format!("#{i}: {e}")),
                };
                check_removal(g, &f).err().map(|e| format!("#{i}: {e}"))
            })
            .collect();
        ensure(bad.is_empty(), || bad.join("; "))?;
        let with_large = graphs
            .iter()
            .filter(|g| {
                let cuts = oracle_cutpoints(g);
                oracle_blocks(g).iter().any(|b| 2 * b.iter().filter(|x| cuts.contains(x)).count() < b.len())
            })
            .count();
        Ok(format!("200/200 pass, {with_large} had large blocks"))
    });
}

fn frac(p: i64, q: i64) -> Rational {
    Rational::new(p, q)
}

#[test]
fn criterion_10_formula_properties() {
    report(10, "formula identities in exact rationals", Some(Duration::from_secs(1)), || {
        let mut checked = 0;
        for k in 1..=20i64 {
            let ku = k as usize;
            for h in 3..20usize {
                let (b, b_next) = (beta(h, ku).unwrap(), beta(h + 1, ku).unwrap());
                ensure(b == frac(h as i64 - 2, (h as i64 - 1) * (k + 2)), || format!("beta({h},{k})"))?;
                ensure(b < b_next, || format!("beta not increasing at h={h}, k={k}"))?;
                checked += 2;
            }
            for n in 2..=10i64 {
                let (odd, even) = (beta_prime(2 * n as usize - 1, ku).unwrap(), beta_prime(2 * n as usize, ku).unwrap());
                ensure(even == frac(n - 1, (n - 1) * (k + 3) + 1), || format!("beta'({},{k})", 2 * n))?;
                ensure(odd > even, || format!("beta'({},{k}) <= beta'({},{k})", 2 * n - 1, 2 * n))?;
                checked += 2;
            }
            for n in 1..=9i64 {
                let bp = beta_prime(2 * n as usize + 2, ku).unwrap();
                let even_side = bp < beta(2 * n as usize + 2, ku).unwrap();
                ensure(even_side == (k < 2 * n), || format!("even comparison at n={n}, k={k}"))?;
                let odd_side = bp < beta(2 * n as usize + 1, ku).unwrap();
                let threshold = frac(2 * n - 1, 1) - frac(1, n);
                ensure(odd_side == (frac(k, 1) < threshold), || format!("odd comparison at n={n}, k={k}"))?;
                ensure(odd_side == (k < 2 * n - 1), || format!("integer odd comparison at n={n}, k={k}"))?;
                checked += 3;
            }
            for g in 3..=20usize {
                let a = alpha(g, ku).unwrap();
                let m = beta(g, ku).unwrap().min(beta_prime(2 * g.div_ceil(2), ku).unwrap());
                ensure(a == m, || format!("alpha({g},{k}) = {a}, min = {m}"))?;
                let (p, q) = oracle_alpha(g as i64, k);
                ensure(a == frac(p, q), || format!("alpha({g},{k}) closed form"))?;
                checked += 2;
            }
        }
        Ok(format!("{checked} identities"))
    });
}
