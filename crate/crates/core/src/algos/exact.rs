use std::time::Instant;

use super::{EdgeDecision, SpannerError, SpannerOutput, SpannerStats};
use crate::combinatorics::fault_sets;
use crate::graph::WeightedGraph;
use crate::paths::{dijkstra_pair_in, GrowingGraph, SearchWorkspace};
use crate::weight::{stretch_bound, Weight};

/// Size limits for brute-force fault enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExactCap {
    pub max_n: usize,
    pub max_f: usize,
}

impl Default for ExactCap {
    fn default() -> Self {
        Self { max_n: 16, max_f: 3 }
    }
}

impl ExactCap {
    pub fn check(&self, n: usize, f: usize) -> Result<(), SpannerError> {
        if n > self.max_n || f > self.max_f {
            Err(SpannerError::CapExceeded {
                n,
                f,
                max_n: self.max_n,
                max_f: self.max_f,
            })
        } else {
            Ok(())
        }
    }
}

/// Fault-tolerant greedy with the exact edge test: keep `(u, v)` iff some
/// `F ⊆ V \ {u, v}` with `|F| <= f` has `d_{H \ F}(u, v) > (2k-1) w(u, v)`.
/// Exponential in `f`; refuses instances above the default [`ExactCap`].
pub fn ft_greedy_exact<W: Weight>(
    g: &WeightedGraph<W>,
    f: usize,
    k: usize,
) -> Result<SpannerOutput<W>, SpannerError> {
    ft_greedy_exact_capped(g, f, k, ExactCap::default())
}

pub fn ft_greedy_exact_capped<W: Weight>(
    g: &WeightedGraph<W>,
    f: usize,
    k: usize,
    cap: ExactCap,
) -> Result<SpannerOutput<W>, SpannerError> {
    if k == 0 {
        return Err(SpannerError::InvalidParams("k must be at least 1".into()));
    }
    cap.check(g.n(), f)?;
    let start = Instant::now();
    let n = g.n();
    let mut h = GrowingGraph::new(n);
    let mut ws = SearchWorkspace::new(n);
    let mut removed = vec![false; n];
    let mut per_edge = Vec::with_capacity(g.m());
    for e in g.sorted_edges() {
        let bound = stretch_bound(k, e.weight);
        let others: Vec<usize> = (0..n).filter(|&x| x != e.u && x != e.v).collect();
        let mut witness = None;
        // smallest fault sets first, colex within a size
        for picks in fault_sets(others.len(), f) {
            for &p in &picks {
                removed[others[p]] = true;
            }
            let d = dijkstra_pair_in(&mut ws, &h, e.u, e.v, |x| !removed[x], Some(bound));
            for &p in &picks {
                removed[others[p]] = false;
            }
            if d.exceeds(bound) {
                witness = Some(picks.iter().map(|&p| others[p]).collect());
                break;
            }
        }
        let accepted = witness.is_some();
        if accepted {
            h.add_edge(e.u, e.v, e.weight, e.id);
        }
        per_edge.push(EdgeDecision {
            witness,
            ..EdgeDecision::plain(e.id, accepted)
        });
    }
    let stats = SpannerStats {
        main: start.elapsed(),
        ..Default::default()
    };
    Ok(SpannerOutput::assemble(g, per_edge, stats))
}
