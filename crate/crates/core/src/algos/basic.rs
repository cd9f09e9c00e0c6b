use std::time::Instant;

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{AlgoParams, EdgeDecision, SpannerError, SpannerOutput, SpannerStats, BASIC_C, BASIC_THRESHOLD};
use crate::graph::WeightedGraph;
use crate::paths::{dijkstra_pair_in, GrowingGraph, SearchWorkspace};
use crate::sets::sample_into;
use crate::weight::{stretch_bound, Weight};

/// Number of sampled subgraphs per edge, `ceil(c ln n)`.
pub(crate) fn basic_samples(n: usize, c: f64) -> usize {
    (c * (n.max(2) as f64).ln()).ceil().max(1.0) as usize
}

/// Randomized fault-tolerant greedy with a sampled edge test.
///
/// For each edge `(u, v)`, `ceil(c ln n)` vertex sets are drawn (both
/// endpoints plus every other vertex with probability `1/(2f)`); the edge is
/// kept iff at least a quarter of the induced subgraphs of the current
/// spanner have `d(u, v) > (2k-1) w(u, v)`. Subgraphs are resampled from
/// scratch for every edge.
pub fn ft_basic_randomized<W: Weight>(
    g: &WeightedGraph<W>,
    params: &AlgoParams,
) -> Result<SpannerOutput<W>, SpannerError> {
    ft_basic_randomized_until(g, params, None)
}

/// [`ft_basic_randomized`] that gives up with
/// [`SpannerError::BudgetExhausted`] once `deadline` has passed.
pub fn ft_basic_randomized_until<W: Weight>(
    g: &WeightedGraph<W>,
    params: &AlgoParams,
    deadline: Option<Instant>,
) -> Result<SpannerOutput<W>, SpannerError> {
    params.require_faults(g.n())?;
    let start = Instant::now();
    let n = g.n();
    let k = params.k;
    let c = params.c.unwrap_or(BASIC_C);
    let alpha = basic_samples(n, c);
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);

    let mut h = GrowingGraph::new(n);
    let mut ws = SearchWorkspace::new(n);
    let mut mark = vec![0u32; n];
    let mut stamp = 0u32;
    let mut sample = Vec::new();
    let order = g.sorted_edges();
    let mut per_edge = Vec::with_capacity(order.len());

    for (processed, e) in order.iter().enumerate() {
        if let Some(deadline) = deadline {
            if Instant::now() >= deadline {
                return Err(SpannerError::BudgetExhausted {
                    processed,
                    total: order.len(),
                });
            }
        }
        let bound = stretch_bound(k, e.weight);
        let mut far = 0usize;
        for _ in 0..alpha {
            stamp = stamp.wrapping_add(1);
            if stamp == 0 {
                mark.iter_mut().for_each(|m| *m = 0);
                stamp = 1;
            }
            sample_into(n, params.f, &mut rng, &mut sample);
            for &x in &sample {
                mark[x] = stamp;
            }
            mark[e.u] = stamp;
            mark[e.v] = stamp;
            let d = dijkstra_pair_in(&mut ws, &h, e.u, e.v, |x| mark[x] == stamp, Some(bound));
            if d.exceeds(bound) {
                far += 1;
            }
        }
        let fraction = far as f64 / alpha as f64;
        let accepted = fraction >= BASIC_THRESHOLD;
        if accepted {
            h.add_edge(e.u, e.v, e.weight, e.id);
        }
        per_edge.push(EdgeDecision {
            fraction: Some(fraction),
            trials: alpha,
            ..EdgeDecision::plain(e.id, accepted)
        });
    }
    let stats = SpannerStats {
        sets: alpha,
        c: Some(c),
        tau: Some(BASIC_THRESHOLD),
        main: start.elapsed(),
        ..Default::default()
    };
    Ok(SpannerOutput::assemble(g, per_edge, stats))
}
