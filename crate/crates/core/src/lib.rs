//! Vertex fault-tolerant `(2k-1)`-spanners.
//!
//! A subgraph `H` of a weighted graph `G` is an `f`-fault-tolerant
//! `(2k-1)`-spanner if for every vertex set `F` with `|F| <= f` and every
//! edge `(u, v)` of `G - F`, `d_{H - F}(u, v) <= (2k-1) w(u, v)`.
//!
//! The crate provides:
//!
//! * graph primitives over a generic [`Weight`] ([`WeightedGraph`]),
//! * the greedy constructions in [`algos`] (plain, exact fault-tolerant,
//!   sampled randomized, set-system randomized and hash-derandomized),
//! * incremental hop-bounded reachability ([`reachability`]),
//! * random and hash-derived vertex set systems with audits ([`sets`]),
//! * an exhaustive and a sampled checker plus girth and size reports
//!   ([`verify`]),
//! * seeded graph generators and the plain-text edge list format.
//!
//! ```
//! use vft_spanner::{gen_graph, GraphKind, WeightDist, Graph, AlgoParams, check_ft_spanner_exhaustive};
//!
//! let g: Graph = gen_graph(GraphKind::Gnp { p: 0.5 }, 10, WeightDist::Unit, 7).unwrap();
//! let out = vft_spanner::ft_deterministic(&g, &AlgoParams::new(1, 2)).unwrap();
//! assert!(check_ft_spanner_exhaustive(&g, &out.spanner, 1, 2).unwrap().pass);
//! ```

pub mod algos;
pub mod combinatorics;
pub mod generate;
pub mod gf2;
pub mod graph;
pub mod hashing;
pub mod io;
pub mod paths;
pub mod reachability;
pub mod record;
pub mod sets;
pub mod verify;
pub mod weight;

pub use algos::{
    build, deterministic_tau, ft_basic_randomized, ft_basic_randomized_until, ft_deterministic,
    ft_deterministic_with, ft_fast_randomized, ft_fast_randomized_with, ft_greedy_exact,
    ft_greedy_exact_capped, greedy, membership_greedy, size_bound, AlgoParams, Algorithm,
    EdgeDecision, EdgeProbe, ExactCap, SpannerError, SpannerOutput, SpannerStats,
};
pub use generate::{gen_graph, GenError, GraphKind, WeightDist};
pub use graph::{EdgeRecord, GraphError, VertexSet, WeightedGraph};
pub use hashing::{choose_parameters, HashError, HashFamily, HashParameters, PolyHashFamily};
pub use io::{parse_graph, write_graph, ParseError};
pub use reachability::{
    HopReachability, IncrementalReachability, ReachabilityError, RecomputeReachability,
};
pub use record::{ExperimentRecord, VerdictSummary};
pub use sets::{
    audit_system, hash_system, random_system, random_system_seeded, AuditMode, AuditReport,
    SetError, SetSystem,
};
pub use verify::{
    check_ft_spanner_exhaustive, check_ft_spanner_sampled, shortest_cycle_length, size_report,
    Counterexample, SizeReport, Verdict, VerifyError,
};
pub use weight::{Distance, Weight};

/// Graphs with `f64` weights, the default scalar.
pub type Graph = WeightedGraph<f64>;
/// Graphs with `f32` weights.
pub type Graph32 = WeightedGraph<f32>;
/// Graphs with exact integer weights.
pub type IntGraph = WeightedGraph<u64>;
pub type Output = SpannerOutput<f64>;
pub type IntOutput = SpannerOutput<u64>;
pub type Dist = Distance<f64>;
