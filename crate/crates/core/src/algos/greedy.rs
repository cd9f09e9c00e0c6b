use std::time::Instant;

use super::{EdgeDecision, SpannerOutput, SpannerStats};
use crate::graph::WeightedGraph;
use crate::paths::{dijkstra_pair_in, GrowingGraph, SearchWorkspace};
use crate::weight::{stretch_bound, Weight};

/// Classic greedy `(2k-1)`-spanner: keep `(u, v)` iff the current spanner
/// distance exceeds `(2k-1) w(u, v)`.
pub fn greedy<W: Weight>(g: &WeightedGraph<W>, k: usize) -> SpannerOutput<W> {
    assert!(k >= 1, "stretch parameter k must be at least 1");
    let start = Instant::now();
    let mut h = GrowingGraph::new(g.n());
    let mut ws = SearchWorkspace::new(g.n());
    let mut per_edge = Vec::with_capacity(g.m());
    for e in g.sorted_edges() {
        let bound = stretch_bound(k, e.weight);
        let d = dijkstra_pair_in(&mut ws, &h, e.u, e.v, |_| true, Some(bound));
        let accept = d.exceeds(bound);
        if accept {
            h.add_edge(e.u, e.v, e.weight, e.id);
        }
        per_edge.push(EdgeDecision::plain(e.id, accept));
    }
    let stats = SpannerStats {
        main: start.elapsed(),
        ..Default::default()
    };
    SpannerOutput::assemble(g, per_edge, stats)
}
