//! Greedy spanner constructions.
//!
//! All five algorithms scan the edges in [`WeightedGraph::sorted_edges`]
//! order and differ only in the test deciding whether an edge joins the
//! spanner:
//!
//! * [`greedy`]: current spanner distance exceeds `(2k-1) w(e)`.
//! * [`ft_greedy_exact`]: some fault set of size `<= f` makes that happen
//!   (brute force, exponential).
//! * [`ft_basic_randomized`]: at least a quarter of freshly sampled induced
//!   subgraphs have distance above the bound.
//! * [`ft_fast_randomized`]: at least a `tau` fraction of the pre-sampled
//!   subgraphs containing the edge have hop distance above `2k-1`,
//!   answered by incremental reachability.
//! * [`ft_deterministic`]: as the fast variant, over a hash-derived set
//!   system.

mod basic;
mod exact;
mod fast;
mod greedy;

use std::time::Duration;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::WeightedGraph;
use crate::hashing::HashError;
use crate::sets::SetError;
use crate::weight::Weight;

pub use basic::{ft_basic_randomized, ft_basic_randomized_until};
pub use exact::{ft_greedy_exact, ft_greedy_exact_capped, ExactCap};
pub use fast::{
    deterministic_tau, ft_deterministic, ft_deterministic_with, ft_fast_randomized,
    ft_fast_randomized_with, membership_greedy, size_bound, EdgeProbe,
};
pub use greedy::greedy;

/// Sampling constant of the basic algorithm (`alpha >= 128 * 3 ln n`).
pub const BASIC_C: f64 = 384.0;
/// Acceptance threshold of the basic algorithm.
pub const BASIC_THRESHOLD: f64 = 0.25;
/// Default sampling constant of the fast randomized algorithm.
pub const FAST_C: f64 = 64.0;
/// Default acceptance threshold of the fast randomized algorithm.
pub const FAST_TAU: f64 = 0.125;
/// Default starting `delta` for the hash parameter search.
pub const DEFAULT_DELTA: usize = 2;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpannerError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("fault budget f must be at least 1 for this algorithm")]
    ZeroFaults,
    #[error("instance with n={n}, f={f} exceeds the brute-force cap (n <= {max_n}, f <= {max_f})")]
    CapExceeded {
        n: usize,
        f: usize,
        max_n: usize,
        max_f: usize,
    },
    #[error("time budget exhausted after {processed} of {total} edges")]
    BudgetExhausted { processed: usize, total: usize },
    #[error(transparent)]
    Sets(#[from] SetError),
    #[error(transparent)]
    Hash(#[from] HashError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Algorithm {
    Greedy,
    Exact,
    Basic,
    Fast,
    Deterministic,
}

impl Algorithm {
    pub fn name(&self) -> &'static str {
        match self {
            Algorithm::Greedy => "greedy",
            Algorithm::Exact => "exact",
            Algorithm::Basic => "basic",
            Algorithm::Fast => "fast",
            Algorithm::Deterministic => "det",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "greedy" => Algorithm::Greedy,
            "exact" => Algorithm::Exact,
            "basic" => Algorithm::Basic,
            "fast" => Algorithm::Fast,
            "det" | "deterministic" => Algorithm::Deterministic,
            _ => return None,
        })
    }

    pub fn is_randomized(&self) -> bool {
        matches!(self, Algorithm::Basic | Algorithm::Fast)
    }
}

impl std::fmt::Display for Algorithm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Parameters shared by the constructions. `c` and `tau` fall back to the
/// per-algorithm defaults when unset.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlgoParams {
    pub f: usize,
    pub k: usize,
    pub c: Option<f64>,
    pub tau: Option<f64>,
    /// Starting `delta` for hash systems.
    pub delta: usize,
    pub seed: u64,
    /// Return the input unchanged when `m <= f^(1-1/k) n^(1+1/k)`.
    pub shortcut: bool,
}

impl AlgoParams {
    pub fn new(f: usize, k: usize) -> Self {
        Self {
            f,
            k,
            c: None,
            tau: None,
            delta: DEFAULT_DELTA,
            seed: 0,
            shortcut: false,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_c(mut self, c: f64) -> Self {
        self.c = Some(c);
        self
    }

    pub fn with_tau(mut self, tau: f64) -> Self {
        self.tau = Some(tau);
        self
    }

    pub fn with_shortcut(mut self, on: bool) -> Self {
        self.shortcut = on;
        self
    }

    pub fn with_delta(mut self, delta: usize) -> Self {
        self.delta = delta;
        self
    }

    pub(crate) fn validate(&self, n: usize) -> Result<(), SpannerError> {
        if self.k == 0 {
            return Err(SpannerError::InvalidParams("k must be at least 1".into()));
        }
        if let Some(c) = self.c {
            if !(c > 0.0 && c.is_finite()) {
                return Err(SpannerError::InvalidParams(format!("c must be positive, got {c}")));
            }
        }
        if let Some(tau) = self.tau {
            if !(tau > 0.0 && tau < 1.0) {
                return Err(SpannerError::InvalidParams(format!(
                    "tau must lie in (0, 1), got {tau}"
                )));
            }
        }
        if self.f > 0 && self.f >= n.max(1) {
            return Err(SpannerError::InvalidParams(format!(
                "f must be below n (f={}, n={n})",
                self.f
            )));
        }
        Ok(())
    }

    pub(crate) fn require_faults(&self, n: usize) -> Result<(), SpannerError> {
        if self.f == 0 {
            return Err(SpannerError::ZeroFaults);
        }
        self.validate(n)
    }
}

/// Outcome of the edge test for one edge.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EdgeDecision {
    /// Id of the edge in the input graph.
    pub edge: usize,
    pub accepted: bool,
    /// Measured fraction of subgraphs with too large a distance: the
    /// estimate over fresh samples (basic) or the exact fraction over `L_e`.
    pub fraction: Option<f64>,
    /// Number of subgraphs the fraction was measured over.
    pub trials: usize,
    /// `L_e` was empty and the edge was accepted without a test.
    pub empty_membership: bool,
    /// Fault set certifying acceptance (exact algorithm).
    pub witness: Option<Vec<usize>>,
}

impl EdgeDecision {
    pub(crate) fn plain(edge: usize, accepted: bool) -> Self {
        Self {
            edge,
            accepted,
            fraction: None,
            trials: 0,
            empty_membership: false,
            witness: None,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SpannerStats {
    pub considered: usize,
    pub accepted: usize,
    pub sets: usize,
    pub c: Option<f64>,
    pub tau: Option<f64>,
    pub delta: Option<usize>,
    pub empty_membership_edges: usize,
    pub shortcut_taken: bool,
    /// Bit-row words held by all reachability structures.
    pub reachability_words: usize,
    pub preprocess: Duration,
    pub main: Duration,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpannerOutput<W> {
    pub spanner: WeightedGraph<W>,
    /// Input edge ids in the order they were accepted.
    pub accepted_edge_ids: Vec<usize>,
    /// One decision per considered edge, in processing order.
    pub per_edge: Vec<EdgeDecision>,
    pub stats: SpannerStats,
}

impl<W: Weight> SpannerOutput<W> {
    pub(crate) fn assemble(
        g: &WeightedGraph<W>,
        per_edge: Vec<EdgeDecision>,
        mut stats: SpannerStats,
    ) -> Self {
        let accepted_edge_ids: Vec<usize> = per_edge
            .iter()
            .filter(|d| d.accepted)
            .map(|d| d.edge)
            .collect();
        stats.considered = per_edge.len();
        stats.accepted = accepted_edge_ids.len();
        stats.empty_membership_edges = per_edge.iter().filter(|d| d.empty_membership).count();
        Self {
            spanner: g.edge_subgraph(accepted_edge_ids.iter().copied()),
            accepted_edge_ids,
            per_edge,
            stats,
        }
    }
}

/// Runs `algo`; a zero fault budget always runs the plain greedy algorithm.
pub fn build<W: Weight>(
    g: &WeightedGraph<W>,
    algo: Algorithm,
    params: &AlgoParams,
) -> Result<SpannerOutput<W>, SpannerError> {
    if params.f == 0 || algo == Algorithm::Greedy {
        params.validate(g.n())?;
        return Ok(greedy(g, params.k));
    }
    match algo {
        Algorithm::Greedy => unreachable!(),
        Algorithm::Exact => ft_greedy_exact(g, params.f, params.k),
        Algorithm::Basic => ft_basic_randomized(g, params),
        Algorithm::Fast => ft_fast_randomized(g, params),
        Algorithm::Deterministic => ft_deterministic(g, params),
    }
}
