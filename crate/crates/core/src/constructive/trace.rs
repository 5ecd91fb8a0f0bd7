//! Line-oriented record of a construction and its replay.

use std::fmt;
use std::str::FromStr;

use std::sync::Arc;

use thiserror::Error;

use crate::graph::{Edge, Graph, Vertex};
use crate::ops::contract_into;
use crate::tree::{extend_tree_lemma3, SpanningTree};

use super::theorem1::{case2_pieces, case5_graphs};
use super::theorem2::split_pieces;
use super::{component_without, recombine, ConstructError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Op {
    Contract,
    Delete,
    Split,
    Extend,
    Base,
}

impl Op {
    fn name(self) -> &'static str {
        match self {
            Op::Contract => "contract",
            Op::Delete => "delete",
            Op::Split => "split",
            Op::Extend => "extend",
            Op::Base => "base",
        }
    }
}

impl FromStr for Op {
    type Err = TraceError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "contract" => Op::Contract,
            "delete" => Op::Delete,
            "split" => Op::Split,
            "extend" => Op::Extend,
            "base" => Op::Base,
            _ => return Err(TraceError::Syntax(format!("unknown op {s:?}"))),
        })
    }
}

/// One reduction. Argument layout by case:
///
/// | case | op | args |
/// |---|---|---|
/// | `1a` | contract | survivor, absorbed |
/// | `1b`, `4` | delete | edge endpoints |
/// | `1.2` | delete | endpoints of every removed edge |
/// | `2`, `1.1` | split | split vertex, then one vertex of each component on the first side |
/// | `3` | extend | a, b |
/// | `5` | extend | a, x, w, x' |
/// | `base-*` | base | endpoints of every tree edge |
///
/// A split is followed by the steps of its first piece, then its second.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub case: String,
    pub op: Op,
    pub args: Vec<Vertex>,
}

impl TraceStep {
    pub(crate) fn new(case: &str, op: Op, args: Vec<Vertex>) -> Self {
        TraceStep {
            case: case.to_string(),
            op,
            args,
        }
    }

    pub(crate) fn base(case: &str, tree: &SpanningTree) -> Self {
        let args = tree.edges().iter().flat_map(|e| [e.lo(), e.hi()]).collect();
        Self::new(case, Op::Base, args)
    }

    pub(crate) fn edges(&self) -> Vec<Edge> {
        self.args.chunks(2).map(|p| Edge::new(p[0], p[1])).collect()
    }
}

impl fmt::Display for TraceStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let args: Vec<String> = self.args.iter().map(ToString::to_string).collect();
        write!(f, "case={} op={} args={}", self.case, self.op.name(), args.join(","))
    }
}

impl FromStr for TraceStep {
    type Err = TraceError;

    fn from_str(line: &str) -> Result<Self, Self::Err> {
        let mut case = None;
        let mut op = None;
        let mut args = None;
        for tok in line.split_whitespace() {
            match tok.split_once('=') {
                Some(("case", v)) => case = Some(v.to_string()),
                Some(("op", v)) => op = Some(v.parse()?),
                Some(("args", v)) => {
                    args = Some(if v.is_empty() {
                        Vec::new()
                    } else {
                        v.split(',')
                            .map(|x| x.parse().map_err(|_| TraceError::Syntax(format!("bad id {x:?}"))))
                            .collect::<Result<_, _>>()?
                    })
                }
                _ => return Err(TraceError::Syntax(format!("unexpected token {tok:?}"))),
            }
        }
        match (case, op, args) {
            (Some(case), Some(op), Some(args)) => Ok(TraceStep { case, op, args }),
            _ => Err(TraceError::Syntax(format!("incomplete step {line:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TraceError {
    #[error("trace syntax: {0}")]
    Syntax(String),
    #[error("trace ended early")]
    Truncated,
    #[error("unused trace steps remain")]
    TrailingSteps,
    #[error("step {index} ({step}) does not apply: {reason}")]
    Mismatch { index: usize, step: String, reason: String },
    #[error("replayed tree differs from the recorded tree")]
    DifferentTree,
    #[error(transparent)]
    Construct(#[from] ConstructError),
}

/// Reductions in pre-order together with the resulting tree.
#[derive(Debug, Clone)]
pub struct ConstructionTrace {
    pub steps: Vec<TraceStep>,
    pub tree: SpanningTree,
    /// Chain parameter for the girth/chain construction, `None` otherwise.
    pub k: Option<usize>,
}

impl ConstructionTrace {
    pub fn to_log(&self) -> String {
        self.steps.iter().map(|s| format!("{s}\n")).collect()
    }

    pub fn parse_log(text: &str) -> Result<Vec<TraceStep>, TraceError> {
        text.lines()
            .filter(|l| !l.trim().is_empty())
            .map(str::parse)
            .collect()
    }

    /// Case ids of the base steps, in order.
    pub fn base_kinds(&self) -> Vec<&str> {
        self.steps
            .iter()
            .filter(|s| s.op == Op::Base)
            .map(|s| s.case.as_str())
            .collect()
    }

    /// Re-executes the recorded steps on `g` without making any choices and
    /// checks that the same tree comes out.
    pub fn replay(&self, g: &Graph) -> Result<SpanningTree, TraceError> {
        let tree = replay_steps(g, &self.steps, self.k)?;
        if tree.edges() != self.tree.edges() {
            return Err(TraceError::DifferentTree);
        }
        Ok(tree)
    }
}

/// Replays a step list on `g`; `k` selects the padding used by splits.
pub fn replay_steps(g: &Graph, steps: &[TraceStep], k: Option<usize>) -> Result<SpanningTree, TraceError> {
    let mut cursor = Cursor { steps, pos: 0 };
    let tree = replay(g, &mut cursor, k)?;
    if cursor.pos != steps.len() {
        return Err(TraceError::TrailingSteps);
    }
    Ok(tree)
}

fn replay(g: &Graph, cur: &mut Cursor<'_>, k: Option<usize>) -> Result<SpanningTree, TraceError> {
    let (index, step) = cur.next()?;
    let bad = |reason: &dyn fmt::Display| mismatch(index, step, reason);
    let host = Arc::new(g.clone());
    let args = &step.args;
    let arity = |n: usize| if args.len() == n { Ok(()) } else { Err(bad(&format!("expected {n} arguments"))) };
    match (step.op, step.case.as_str()) {
        (Op::Base, _) => SpanningTree::new(host, step.edges()).map_err(|e| bad(&e)),
        (Op::Contract, _) => {
            arity(2)?;
            let c = contract_into(g, args[0], args[1]).map_err(|e| bad(&e))?;
            let sub = replay(&c.graph, cur, k)?;
            sub.uncontract(&c, host).map_err(|e| bad(&e))
        }
        (Op::Delete, _) => {
            if args.is_empty() || args.len() % 2 != 0 {
                return Err(bad(&"expected endpoint pairs"));
            }
            let edges = step.edges();
            if let Some(e) = edges.iter().find(|e| !g.contains_edge(**e)) {
                return Err(bad(&format!("{e} is not an edge")));
            }
            let sub = replay(&g.without_edges(&edges).map_err(|e| bad(&e))?, cur, k)?;
            sub.rehost(host).map_err(|e| bad(&e))
        }
        (Op::Split, case) => {
            let (&a, roots) = args.split_first().ok_or_else(|| bad(&"missing split vertex"))?;
            let (p1, p2) = match (case, k) {
                ("2", _) => case2_pieces(g, a, roots)?,
                ("1.1", Some(k)) => split_pieces(g, a, roots, k)?,
                _ => return Err(bad(&"unknown split")),
            };
            let t1 = replay(&p1.graph, cur, k)?;
            let t2 = replay(&p2.graph, cur, k)?;
            Ok(recombine(&host, a, &p1, &t1, &p2, &t2)?)
        }
        (Op::Extend, "3") => {
            arity(2)?;
            let sub = component_without(g, args[0], args[1]).map_err(|e| bad(&e))?;
            let t = replay(&sub, cur, k)?;
            extend_tree_lemma3(&t, args[0], args[1], host).map_err(|e| bad(&e))
        }
        (Op::Extend, "5") => {
            arity(4)?;
            let (a, x, w, x2) = (args[0], args[1], args[2], args[3]);
            let (star, sub) = case5_graphs(g, a, w, x2)?;
            let t = replay(&sub, cur, k)?;
            let t_star = extend_tree_lemma3(&t, a, x, Arc::new(star)).map_err(|e| bad(&e))?;
            t_star.rehost(host).map_err(|e| bad(&e))
        }
        (Op::Extend, _) => Err(bad(&"unknown extension")),
    }
}

pub(crate) struct Cursor<'a> {
    steps: &'a [TraceStep],
    pos: usize,
}

impl<'a> Cursor<'a> {
    pub fn next(&mut self) -> Result<(usize, &'a TraceStep), TraceError> {
        let step = self.steps.get(self.pos).ok_or(TraceError::Truncated)?;
        self.pos += 1;
        Ok((self.pos - 1, step))
    }
}

pub(crate) fn mismatch(index: usize, step: &TraceStep, reason: impl fmt::Display) -> TraceError {
    TraceError::Mismatch {
        index,
        step: step.to_string(),
        reason: reason.to_string(),
    }
}
