//! Ground-truth checks for fault-tolerant spanners.
//!
//! Checking the stretch of the edges of `g` is enough: if every edge
//! `(u, v)` of `g - F` has a short enough detour in `h - F`, concatenating
//! the detours along a shortest path bounds every other pair as well.

use std::collections::VecDeque;

use rand::seq::index::sample;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algos::{size_bound, ExactCap};
use crate::combinatorics::fault_sets;
use crate::graph::{GraphError, VertexSet, WeightedGraph};
use crate::paths::{dijkstra_all, dijkstra_pair_in, SearchWorkspace};
use crate::weight::{stretch_bound, Distance, Weight};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum VerifyError {
    #[error("instance with n={n}, f={f} exceeds the exhaustive cap (n <= {max_n}, f <= {max_f})")]
    CapExceeded {
        n: usize,
        f: usize,
        max_n: usize,
        max_f: usize,
    },
    #[error("spanner is not a subgraph of the input graph")]
    NotASubgraph,
    #[error("k must be at least 1")]
    InvalidStretch,
    #[error("sampled check needs at least one trial")]
    ZeroTrials,
    #[error("counterexample failed re-validation: {0}")]
    Revalidation(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A stretch violation: edge `(u, v)` of `g`, fault set `faults`, and
/// `d_{h - faults}(u, v) = lhs > rhs = (2k-1) w(u, v)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Counterexample {
    pub edge: usize,
    pub u: usize,
    pub v: usize,
    pub faults: Vec<usize>,
    /// `None` when `u` and `v` are disconnected.
    pub lhs: Option<f64>,
    pub rhs: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub pass: bool,
    pub counterexample: Option<Counterexample>,
    /// `(edge, F)` pairs examined.
    pub checked_count: u64,
}

impl Verdict {
    fn from_result(counterexample: Option<Counterexample>, checked_count: u64) -> Self {
        Self {
            pass: counterexample.is_none(),
            counterexample,
            checked_count,
        }
    }
}

fn check_inputs<W: Weight>(
    g: &WeightedGraph<W>,
    h: &WeightedGraph<W>,
    k: usize,
) -> Result<(), VerifyError> {
    if k == 0 {
        return Err(VerifyError::InvalidStretch);
    }
    if !h.is_subgraph_of(g) {
        return Err(VerifyError::NotASubgraph);
    }
    Ok(())
}

/// Re-derives a violation through [`WeightedGraph::weighted_distance`].
fn revalidate<W: Weight>(
    g: &WeightedGraph<W>,
    h: &WeightedGraph<W>,
    edge: usize,
    faults: &[usize],
    k: usize,
) -> Result<Counterexample, VerifyError> {
    let e = g.edge(edge);
    let excluded = VertexSet::from_vertices(g.n(), faults.iter().copied());
    let d = h.weighted_distance(e.u, e.v, &excluded)?;
    let bound = stretch_bound(k, e.weight);
    if !d.exceeds(bound) {
        return Err(VerifyError::Revalidation(format!(
            "edge ({}, {}) with F={faults:?} has distance {d} <= {bound}",
            e.u, e.v
        )));
    }
    Ok(Counterexample {
        edge,
        u: e.u,
        v: e.v,
        faults: faults.to_vec(),
        lhs: d.finite().and_then(|w| w.to_f64()),
        rhs: bound.to_f64().unwrap_or(f64::INFINITY),
    })
}

/// Checks every `F ⊆ V` with `|F| <= f` against every edge of `g` outside
/// `F`, under the default [`ExactCap`].
///
/// Fault sets are visited by size and in colex order within a size; edges
/// by id. The first violation in that order is reported.
pub fn check_ft_spanner_exhaustive<W: Weight>(
    g: &WeightedGraph<W>,
    h: &WeightedGraph<W>,
    f: usize,
    k: usize,
) -> Result<Verdict, VerifyError> {
    check_ft_spanner_exhaustive_capped(g, h, f, k, ExactCap::default())
}

pub fn check_ft_spanner_exhaustive_capped<W: Weight>(
    g: &WeightedGraph<W>,
    h: &WeightedGraph<W>,
    f: usize,
    k: usize,
    cap: ExactCap,
) -> Result<Verdict, VerifyError> {
    check_inputs(g, h, k)?;
    let n = g.n();
    if n > cap.max_n || f > cap.max_f {
        return Err(VerifyError::CapExceeded {
            n,
            f,
            max_n: cap.max_n,
            max_f: cap.max_f,
        });
    }
    let mut removed = vec![false; n];
    let mut checked = 0u64;
    for faults in fault_sets(n, f) {
        for &x in &faults {
            removed[x] = true;
        }
        let mut found = None;
        let mut source = usize::MAX;
        let mut dist: Vec<Distance<W>> = Vec::new();
        // edges are sorted by (u, v), so one search per distinct u
        for e in g.edges() {
            if removed[e.u] || removed[e.v] {
                continue;
            }
            if e.u != source {
                source = e.u;
                dist = dijkstra_all(h, source, |x| !removed[x]);
            }
            checked += 1;
            if dist[e.v].exceeds(stretch_bound(k, e.weight)) {
                found = Some(e.id);
                break;
            }
        }
        for &x in &faults {
            removed[x] = false;
        }
        if let Some(edge) = found {
            let cx = revalidate(g, h, edge, &faults, k)?;
            return Ok(Verdict::from_result(Some(cx), checked));
        }
    }
    Ok(Verdict::from_result(None, checked))
}

/// Tests `trials` random `(edge, F)` pairs: a uniform edge of `g` and a
/// uniform fault set of size `min(f, n - 2)` avoiding its endpoints. A pass
/// only means no violation was found.
pub fn check_ft_spanner_sampled<W: Weight, R: Rng + ?Sized>(
    g: &WeightedGraph<W>,
    h: &WeightedGraph<W>,
    f: usize,
    k: usize,
    trials: usize,
    rng: &mut R,
) -> Result<Verdict, VerifyError> {
    if trials == 0 {
        return Err(VerifyError::ZeroTrials);
    }
    check_inputs(g, h, k)?;
    if g.m() == 0 {
        return Ok(Verdict::from_result(None, 0));
    }
    let n = g.n();
    let size = f.min(n.saturating_sub(2));
    let mut ws = SearchWorkspace::new(n);
    let mut removed = vec![false; n];
    let mut checked = 0u64;
    for _ in 0..trials {
        let e = g.edge(rng.gen_range(0..g.m()));
        // draw from 0..n-2 and skip over u < v
        let mut faults: Vec<usize> = sample(rng, n - 2, size)
            .into_iter()
            .map(|x| {
                let x = if x >= e.u { x + 1 } else { x };
                if x >= e.v {
                    x + 1
                } else {
                    x
                }
            })
            .collect();
        faults.sort_unstable();
        for &x in &faults {
            removed[x] = true;
        }
        let bound = stretch_bound(k, e.weight);
        let d = dijkstra_pair_in(&mut ws, h, e.u, e.v, |x| !removed[x], Some(bound));
        for &x in &faults {
            removed[x] = false;
        }
        checked += 1;
        if d.exceeds(bound) {
            let cx = revalidate(g, h, e.id, &faults, k)?;
            return Ok(Verdict::from_result(Some(cx), checked));
        }
    }
    Ok(Verdict::from_result(None, checked))
}

/// Unweighted girth of `h`, `None` for forests.
pub fn shortest_cycle_length<W: Weight>(h: &WeightedGraph<W>) -> Option<usize> {
    let n = h.n();
    let mut dist = vec![usize::MAX; n];
    let mut touched = Vec::new();
    let mut queue = VecDeque::new();
    let mut best: Option<usize> = None;
    for e in h.edges() {
        // shortest u-v path avoiding e closes the shortest cycle through e
        let limit = best.map_or(usize::MAX, |b| b - 1);
        dist[e.u] = 0;
        touched.push(e.u);
        queue.push_back(e.u);
        'bfs: while let Some(x) = queue.pop_front() {
            if dist[x] + 1 >= limit {
                break;
            }
            for nb in h.neighbors(x) {
                if nb.edge == e.id || dist[nb.vertex] != usize::MAX {
                    continue;
                }
                dist[nb.vertex] = dist[x] + 1;
                touched.push(nb.vertex);
                if nb.vertex == e.v {
                    best = Some(dist[nb.vertex] + 1);
                    break 'bfs;
                }
                queue.push_back(nb.vertex);
            }
        }
        for &x in &touched {
            dist[x] = usize::MAX;
        }
        touched.clear();
        queue.clear();
        if best == Some(3) {
            break;
        }
    }
    best
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SizeReport {
    pub edges: usize,
    /// `f^(1-1/k) n^(1+1/k)`
    pub bound: f64,
    pub ratio: f64,
}

pub fn size_report<W: Weight>(h: &WeightedGraph<W>, n: usize, f: usize, k: usize) -> SizeReport {
    let bound = size_bound(n, f, k);
    SizeReport {
        edges: h.m(),
        bound,
        ratio: h.m() as f64 / bound,
    }
}
