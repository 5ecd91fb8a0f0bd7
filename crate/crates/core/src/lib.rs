//! Maximum-leaf spanning trees: an exact solver, closed-form lower bounds
//! parameterized by girth and degree-2 chain length, proof-following tree
//! constructions, and generators for the graphs where the bounds are tight.

pub mod blocks;
pub mod bounds;
pub mod constructive;
pub mod corpus;
pub mod exact;
pub mod extremal;
pub mod graph;
pub mod io;
pub mod metrics;
pub mod ops;
pub mod tree;

pub use blocks::{decompose_blocks, essential_cutpoints, find_spines, Block, BlockDecomposition, Spine};
pub use bounds::{alpha, bound_kw, bound_theorem1, bound_theorem2, BoundKind, BoundReport, Rational};
pub use corpus::{extremal_suite, random_constrained_graph, verify_corpus, verify_extremal, Constraints, CorpusParams, CorpusReport, Method, Theorem};
pub use exact::{enumerate_spanning_trees, exact_mlst, greedy_leafy, ExactResult, SolverConfig};
pub use graph::{Edge, Graph, GraphBuilder, GraphError, Vertex};
pub use metrics::{chain_metric, girth, s_count, Girth, GraphMetrics};
pub use ops::{contract_edge, glue, Contraction, Glued};
pub use tree::{glue_trees, SpanningTree, TreeError, TreeViolation};
