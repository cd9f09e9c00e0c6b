//! Seeded graph generators.

use num_traits::NumCast;
use rand::seq::index::sample;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{GraphError, WeightedGraph};
use crate::weight::Weight;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GenError {
    #[error("invalid generator parameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GraphKind {
    /// Erdős–Rényi: every pair independently with probability `p`.
    Gnp { p: f64 },
    /// `m` distinct pairs drawn uniformly.
    Gnm { m: usize },
    Complete,
    /// Row-major grid with `cols` columns; the last row may be partial.
    Grid { cols: usize },
    Path,
    Cycle,
}

impl GraphKind {
    pub fn name(&self) -> &'static str {
        match self {
            GraphKind::Gnp { .. } => "gnp",
            GraphKind::Gnm { .. } => "gnm",
            GraphKind::Complete => "complete",
            GraphKind::Grid { .. } => "grid",
            GraphKind::Path => "path",
            GraphKind::Cycle => "cycle",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "dist", rename_all = "snake_case")]
pub enum WeightDist {
    Unit,
    /// Uniform on `[lo, hi)`; integer weight types round to the nearest value.
    Uniform { lo: f64, hi: f64 },
}

/// Pair index `i` in `0..n(n-1)/2` to `(u, v)` with `u < v`, row by row.
fn pair_from_index(i: usize, n: usize) -> (usize, usize) {
    let mut u = 0;
    let mut rest = i;
    while rest >= n - 1 - u {
        rest -= n - 1 - u;
        u += 1;
    }
    (u, u + 1 + rest)
}

/// A normalized random or structured graph, reproducible from `seed`.
///
/// The topology is drawn first and the weights afterwards in canonical
/// edge order, so `Unit` and `Uniform` graphs of the same seed share
/// their edge sets.
pub fn gen_graph<W: Weight>(
    kind: GraphKind,
    n: usize,
    weights: WeightDist,
    seed: u64,
) -> Result<WeightedGraph<W>, GenError> {
    let bad = |msg: String| Err(GenError::InvalidParameter(msg));
    if let WeightDist::Uniform { lo, hi } = weights {
        if !(lo.is_finite() && hi.is_finite() && lo >= 0.0 && lo < hi) {
            return bad(format!("uniform weights need 0 <= lo < hi, got ({lo}, {hi})"));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pairs_total = n * n.saturating_sub(1) / 2;
    let pairs: Vec<(usize, usize)> = match kind {
        GraphKind::Gnp { p } => {
            if !(0.0..=1.0).contains(&p) {
                return bad(format!("p must lie in [0, 1], got {p}"));
            }
            let mut out = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(p) {
                        out.push((u, v));
                    }
                }
            }
            out
        }
        GraphKind::Gnm { m } => {
            if m > pairs_total {
                return bad(format!("m={m} exceeds the {pairs_total} pairs on {n} vertices"));
            }
            let mut idx = sample(&mut rng, pairs_total, m).into_vec();
            idx.sort_unstable();
            idx.into_iter().map(|i| pair_from_index(i, n)).collect()
        }
        GraphKind::Complete => (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect(),
        GraphKind::Grid { cols } => {
            if cols == 0 {
                return bad("grid needs at least one column".into());
            }
            let mut out = Vec::new();
            for x in 0..n {
                if (x + 1) % cols != 0 && x + 1 < n {
                    out.push((x, x + 1));
                }
                if x + cols < n {
                    out.push((x, x + cols));
                }
            }
            out
        }
        GraphKind::Path => (1..n).map(|v| (v - 1, v)).collect(),
        GraphKind::Cycle => {
            if n < 3 {
                return bad(format!("a cycle needs at least 3 vertices, got {n}"));
            }
            (1..n).map(|v| (v - 1, v)).chain([(0, n - 1)]).collect()
        }
    };
    let mut pairs = pairs;
    pairs.sort_unstable();
    let mut raw = Vec::with_capacity(pairs.len());
    for (u, v) in pairs {
        let w = match weights {
            WeightDist::Unit => W::from_factor(1),
            WeightDist::Uniform { lo, hi } => {
                let x: f64 = rng.gen_range(lo..hi);
                let x = if <W as NumCast>::from(0.5).is_some_and(|h: W| h > W::zero()) {
                    x
                } else {
                    x.round()
                };
                <W as NumCast>::from(x).ok_or_else(|| {
                    GenError::InvalidParameter(format!("weight {x} not representable"))
                })?
            }
        };
        raw.push((u, v, w));
    }
    Ok(WeightedGraph::normalize(raw, n)?)
}
