use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use leafspan::bounds::girth_parameter;
use leafspan::constructive::{construct_theorem1, construct_theorem2_with_girth, ConstructError, ConstructionTrace};
use leafspan::corpus::Method as CorpusMethod;
use leafspan::exact::DEFAULT_NODE_BUDGET;
use leafspan::extremal::{glue_extremal_chain, FamilySpec};
use leafspan::io::{parse_graph, serialize_graph, to_dot};
use leafspan::{
    chain_metric, exact_mlst, extremal_suite, girth, random_constrained_graph, s_count, verify_corpus,
    verify_extremal, BoundReport, Constraints, CorpusParams, CorpusReport, Graph, SolverConfig, SpanningTree,
    Theorem,
};

/// Maximum-leaf spanning trees: exact values, lower bounds, constructions
/// and extremal graphs.
///
/// Graphs are edge lists, one `u v` pair per line (`v <id>` declares an
/// isolated vertex, `#` starts a comment). Exit status: 0 when every check
/// passes, 1 on a bound violation, 2 on bad input.
#[derive(Parser)]
#[command(name = "leafspan", version)]
struct Cli {
    /// Node limit of the exact search.
    #[arg(long, global = true, env = "LEAFSPAN_BUDGET", default_value_t = DEFAULT_NODE_BUDGET)]
    budget: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Io {
    /// Read the graph from this file instead of standard input.
    #[arg(long, short)]
    input: Option<PathBuf>,
    /// Write to this file instead of standard output.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct Out {
    /// Write to this file instead of standard output.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum BoundArg {
    #[value(name = "1")]
    One,
    #[value(name = "2")]
    Two,
    Kw,
}

#[derive(Clone, Copy, ValueEnum)]
enum TheoremArg {
    #[value(name = "1")]
    One,
    #[value(name = "2")]
    Two,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    #[value(name = "1")]
    One,
    #[value(name = "2")]
    Two,
    Extremal,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    TriangleTree,
    CycleSpine,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Auto,
    Exact,
    Construct,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Edges,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Maximum leaf count with an optimal spanning tree.
    Exact {
        #[command(flatten)]
        io: Io,
    },
    /// Evaluate a lower bound for the input graph, as JSON.
    Bound {
        #[command(flatten)]
        io: Io,
        #[arg(long, value_enum)]
        theorem: BoundArg,
        /// Girth parameter; defaults to the measured girth (3 for trees).
        #[arg(long)]
        g: Option<usize>,
        /// Chain parameter; defaults to the longest degree-2 chain, at least 1.
        #[arg(long)]
        k: Option<usize>,
        /// Also compute the exact leaf count and check it against the bound.
        #[arg(long)]
        exact: bool,
    },
    /// Spanning tree built by the constructive proof of a bound.
    Construct {
        #[command(flatten)]
        io: Io,
        #[arg(long, value_enum)]
        theorem: TheoremArg,
        #[arg(long)]
        g: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        /// Write the reduction trace to this file.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Extremal graph, optionally a chain of glued copies.
    Gen {
        #[command(flatten)]
        out: Out,
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        g: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value_t = 1)]
        copies: usize,
        #[arg(long, value_enum, default_value = "edges")]
        format: FormatArg,
    },
    /// Seeded random connected graph under degree, girth and chain constraints.
    Random {
        #[command(flatten)]
        out: Out,
        #[arg(long)]
        v: usize,
        #[arg(long, default_value_t = 1)]
        min_degree: usize,
        /// Every cycle has at least this length.
        #[arg(long, default_value_t = 3)]
        girth: usize,
        /// Longest allowed chain of degree-2 vertices.
        #[arg(long)]
        ell: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Check a bound on a seeded random corpus, or the extremal families.
    Verify {
        #[command(flatten)]
        out: Out,
        #[arg(long, value_enum)]
        theorem: SuiteArg,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 2)]
        min_v: usize,
        #[arg(long, default_value_t = 12)]
        max_v: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// `auto` searches exactly up to --exact-limit vertices and constructs above.
        #[arg(long, value_enum, default_value = "auto")]
        method: MethodArg,
        #[arg(long, default_value_t = 14)]
        exact_limit: usize,
    },
    /// Graphviz rendering of the input graph.
    ExportDot {
        #[command(flatten)]
        io: Io,
        /// Draw the edges of this tree file in bold.
        #[arg(long)]
        tree: Option<PathBuf>,
        /// Draw an optimal spanning tree in bold.
        #[arg(long, conflicts_with = "tree")]
        exact: bool,
    },
}

enum Failure {
    Violation(String),
    Input(String),
}

impl Failure {
    fn input(e: impl ToString) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome = Result<bool, Failure>;

fn read_graph(path: &Option<PathBuf>) -> Result<Graph, Failure> {
    let text = match path {
        Some(p) => fs::read_to_string(p).map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?,
        None => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s).map_err(Failure::input)?;
            s
        }
    };
    parse_graph(&text).map_err(Failure::input)
}

fn write_out(path: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Input(format!("{}: {e}", p.display()))),
        None => io::stdout().write_all(text.as_bytes()).map_err(Failure::input),
    }
}

fn connected(g: &Graph) -> Result<(), Failure> {
    if g.vertex_count() < 2 {
        return Err(Failure::Input("graph needs at least two vertices".into()));
    }
    g.ensure_connected().map_err(Failure::input)
}

fn default_k(g: &Graph, k: Option<usize>) -> usize {
    k.unwrap_or_else(|| chain_metric(g).max(1))
}

fn run(cli: Cli) -> Outcome {
    let cfg = SolverConfig::with_budget(cli.budget);
    match cli.command {
        Command::Exact { io } => {
            let g = read_graph(&io.input)?;
            connected(&g)?;
            let r = exact_mlst(&g, cfg).map_err(Failure::input)?;
            let text = format!(
                "u={} optimal={} nodes={} time_ms={:.3}\n{}",
                r.u_value,
                r.optimal,
                r.nodes_explored,
                r.time.as_secs_f64() * 1e3,
                r.witness.to_text()
            );
            write_out(&io.output, &text)?;
            Ok(true)
        }
        Command::Bound {
            io,
            theorem,
            g: gp,
            k,
            exact,
        } => {
            let g = read_graph(&io.input)?;
            let mut report = match theorem {
                BoundArg::One => BoundReport::theorem1(s_count(&g)),
                BoundArg::Kw => BoundReport::kleitman_west(g.vertex_count()),
                BoundArg::Two => BoundReport::theorem2(
                    g.vertex_count(),
                    gp.unwrap_or_else(|| girth_parameter(girth(&g))),
                    default_k(&g, k),
                )
                .map_err(Failure::input)?,
            };
            if exact {
                connected(&g)?;
                let r = exact_mlst(&g, cfg).map_err(Failure::input)?;
                if !r.optimal {
                    return Err(Failure::Violation(format!(
                        "node budget exhausted, best found {}",
                        r.u_value
                    )));
                }
                report = report.with_achieved(r.u_value);
            }
            write_out(&io.output, &format!("{}\n", report.to_json()))?;
            Ok(report.satisfied().unwrap_or(true))
        }
        Command::Construct {
            io,
            theorem,
            g: gp,
            k,
            trace,
        } => {
            let g = read_graph(&io.input)?;
            let built = match theorem {
                TheoremArg::One => construct_theorem1(&g),
                TheoremArg::Two => construct_theorem2_with_girth(
                    &g,
                    default_k(&g, k),
                    gp.unwrap_or_else(|| girth_parameter(girth(&g))),
                ),
            };
            let (tree, log): (SpanningTree, ConstructionTrace) = built.map_err(|e| match e {
                ConstructError::NotConnected
                | ConstructError::TooFewVertices
                | ConstructError::InvalidK
                | ConstructError::ChainTooLong { .. } => Failure::input(e),
                other => Failure::Violation(other.to_string()),
            })?;
            if let Some(path) = &trace {
                write_out(&Some(path.clone()), &log.to_log())?;
            }
            write_out(&io.output, &tree.to_text())?;
            Ok(true)
        }
        Command::Gen {
            out,
            family,
            n,
            g,
            k,
            copies,
            format,
        } => {
            let missing = |name: &str| Failure::Input(format!("--{name} is required for this family"));
            let spec = match family {
                FamilyArg::TriangleTree => FamilySpec::triangle_tree(n.ok_or_else(|| missing("n"))?),
                FamilyArg::CycleSpine => {
                    FamilySpec::cycle_spine(g.ok_or_else(|| missing("g"))?, k.ok_or_else(|| missing("k"))?)
                }
            }
            .map_err(Failure::input)?;
            if copies == 0 {
                return Err(Failure::Input("--copies must be at least 1".into()));
            }
            let graph = glue_extremal_chain(&spec, copies).map_err(Failure::input)?;
            let text = match format {
                FormatArg::Edges => serialize_graph(&graph),
                FormatArg::Dot => to_dot(&graph, None),
            };
            write_out(&out.output, &text)?;
            Ok(true)
        }
        Command::Random {
            out,
            v,
            min_degree,
            girth,
            ell,
            seed,
        } => {
            let c = Constraints {
                v,
                min_degree,
                girth_at_least: girth,
                ell_at_most: ell,
            };
            let g = random_constrained_graph(c, seed).map_err(Failure::input)?;
            write_out(&out.output, &serialize_graph(&g))?;
            Ok(true)
        }
        Command::Verify {
            out,
            theorem,
            count,
            min_v,
            max_v,
            seed,
            method,
            exact_limit,
        } => {
            let report: CorpusReport = match theorem {
                SuiteArg::Extremal => verify_extremal(&extremal_suite(), cfg),
                SuiteArg::One | SuiteArg::Two => {
                    if min_v < 2 || min_v > max_v {
                        return Err(Failure::Input("need 2 <= --min-v <= --max-v".into()));
                    }
                    let t = if matches!(theorem, SuiteArg::One) {
                        Theorem::One
                    } else {
                        Theorem::Two
                    };
                    let mut params = CorpusParams::new(t, count, max_v, seed);
                    params.min_v = min_v;
                    params.exact_limit = exact_limit;
                    params.node_budget = cli.budget;
                    params.method = match method {
                        MethodArg::Auto => None,
                        MethodArg::Exact => Some(CorpusMethod::Exact),
                        MethodArg::Construct => Some(CorpusMethod::Construct),
                    };
                    verify_corpus(&params)
                }
            };
            write_out(&out.output, &report.to_text())?;
            Ok(report.all_pass())
        }
        Command::ExportDot { io, tree, exact } => {
            let g = read_graph(&io.input)?;
            let host = Arc::new(g.clone());
            let highlight = match (&tree, exact) {
                (Some(path), _) => {
                    let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
                    Some(SpanningTree::from_text(host, &text).map_err(Failure::input)?)
                }
                (None, true) => {
                    connected(&g)?;
                    Some(exact_mlst(&g, cfg).map_err(Failure::input)?.witness)
                }
                (None, false) => None,
            };
            let text = match &highlight {
                Some(t) => to_dot(&g, Some(&|e| t.edges().contains(&e))),
                None => to_dot(&g, None),
            };
            write_out(&io.output, &text)?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Violation(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
