use std::time::Instant;

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{AlgoParams, EdgeDecision, SpannerError, SpannerOutput, SpannerStats, FAST_C, FAST_TAU};
use crate::graph::WeightedGraph;
use crate::hashing::choose_parameters;
use crate::reachability::{HopReachability, IncrementalReachability};
use crate::sets::{hash_system, random_system, Membership, SetSystem};
use crate::weight::Weight;

/// `f^(1-1/k) n^(1+1/k)`, with `f` clamped to at least 1.
pub fn size_bound(n: usize, f: usize, k: usize) -> f64 {
    let f = f.max(1) as f64;
    let k = k as f64;
    f.powf(1.0 - 1.0 / k) * (n as f64).powf(1.0 + 1.0 / k)
}

/// Threshold of the deterministic algorithm: the guaranteed avoiding count
/// `3/8 |H|` over the membership bound `(1 + delta) |H|`.
pub fn deterministic_tau(delta: usize) -> f64 {
    0.375 / (1.0 + delta as f64)
}

/// What the main loop saw for one edge; handed to the probe callback.
#[derive(Debug)]
pub struct EdgeProbe<'a> {
    pub edge: usize,
    pub u: usize,
    pub v: usize,
    pub memberships: &'a [Membership],
    /// `unreachable[j]`: the query on set `memberships[j].set` returned NO.
    pub unreachable: &'a [bool],
    pub accepted: bool,
}

/// Randomized fault-tolerant greedy over `ceil(c f^3 ln n)` pre-sampled
/// vertex sets with incremental hop reachability.
pub fn ft_fast_randomized<W: Weight>(
    g: &WeightedGraph<W>,
    params: &AlgoParams,
) -> Result<SpannerOutput<W>, SpannerError> {
    ft_fast_randomized_with::<W, IncrementalReachability>(g, params, |_| {})
}

pub fn ft_fast_randomized_with<W: Weight, R: HopReachability>(
    g: &WeightedGraph<W>,
    params: &AlgoParams,
    probe: impl FnMut(&EdgeProbe<'_>),
) -> Result<SpannerOutput<W>, SpannerError> {
    params.require_faults(g.n())?;
    let c = params.c.unwrap_or(FAST_C);
    let tau = params.tau.unwrap_or(FAST_TAU);
    let stats = SpannerStats {
        c: Some(c),
        tau: Some(tau),
        ..Default::default()
    };
    if let Some(out) = shortcut(g, params, &stats) {
        return Ok(out);
    }
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let system = random_system(g.n().max(2), params.f, c, &mut rng)?;
    let built = start.elapsed();
    let mut out = membership_greedy::<W, R>(g, &system, params.k, tau, stats, probe);
    out.stats.preprocess += built;
    Ok(out)
}

/// Deterministic fault-tolerant greedy over the polynomial-hash set system,
/// with threshold [`deterministic_tau`].
pub fn ft_deterministic<W: Weight>(
    g: &WeightedGraph<W>,
    params: &AlgoParams,
) -> Result<SpannerOutput<W>, SpannerError> {
    ft_deterministic_with::<W, IncrementalReachability>(g, params, |_| {})
}

pub fn ft_deterministic_with<W: Weight, R: HopReachability>(
    g: &WeightedGraph<W>,
    params: &AlgoParams,
    probe: impl FnMut(&EdgeProbe<'_>),
) -> Result<SpannerOutput<W>, SpannerError> {
    params.require_faults(g.n())?;
    let start = Instant::now();
    let hp = choose_parameters(g.n(), params.f, params.delta)?;
    let tau = deterministic_tau(hp.delta);
    let stats = SpannerStats {
        tau: Some(tau),
        delta: Some(hp.delta),
        ..Default::default()
    };
    if let Some(out) = shortcut(g, params, &stats) {
        return Ok(out);
    }
    let system = hash_system(g.n(), params.f, &hp.family)?;
    let built = start.elapsed();
    let mut out = membership_greedy::<W, R>(g, &system, params.k, tau, stats, probe);
    out.stats.preprocess += built;
    Ok(out)
}

fn shortcut<W: Weight>(
    g: &WeightedGraph<W>,
    params: &AlgoParams,
    stats: &SpannerStats,
) -> Option<SpannerOutput<W>> {
    if !params.shortcut || g.m() as f64 > size_bound(g.n(), params.f, params.k) {
        return None;
    }
    let per_edge = g
        .sorted_edges()
        .iter()
        .map(|e| EdgeDecision::plain(e.id, true))
        .collect();
    let stats = SpannerStats {
        shortcut_taken: true,
        ..stats.clone()
    };
    Some(SpannerOutput::assemble(g, per_edge, stats))
}

/// Greedy loop shared by the fast randomized and deterministic algorithms.
///
/// One reachability structure is kept per set of `system`. Edge `e` is
/// accepted iff the fraction of `i ∈ L_e` whose structure reports
/// `d*(u, v) > 2k-1` is at least `tau`; accepted edges are inserted into
/// every structure in `L_e`. An empty `L_e` accepts the edge untested.
pub fn membership_greedy<W: Weight, R: HopReachability>(
    g: &WeightedGraph<W>,
    system: &SetSystem,
    k: usize,
    tau: f64,
    stats: SpannerStats,
    mut probe: impl FnMut(&EdgeProbe<'_>),
) -> SpannerOutput<W> {
    let start = Instant::now();
    let order = g.sorted_edges();
    let mut structures: Vec<R> = system
        .sets()
        .iter()
        .map(|set| R::with_vertices(set.clone(), k))
        .collect();

    // L_e for every edge, stored flat in processing order
    let mut offsets = Vec::with_capacity(order.len() + 1);
    let mut memberships: Vec<Membership> = Vec::new();
    offsets.push(0);
    for e in &order {
        memberships.extend(system.edge_membership_positions(e.u, e.v));
        offsets.push(memberships.len());
    }
    let preprocess = start.elapsed();

    let main_start = Instant::now();
    let mut per_edge = Vec::with_capacity(order.len());
    let mut unreachable = Vec::new();
    for (idx, e) in order.iter().enumerate() {
        let le = &memberships[offsets[idx]..offsets[idx + 1]];
        unreachable.clear();
        unreachable.extend(le.iter().map(|m| {
            !structures[m.set as usize].reachable_local(m.pos_u as usize, m.pos_v as usize)
        }));
        let far = unreachable.iter().filter(|&&x| x).count();
        let (accepted, fraction, empty) = if le.is_empty() {
            (true, None, true)
        } else {
            let p = far as f64 / le.len() as f64;
            (p >= tau, Some(p), false)
        };
        if accepted {
            for m in le {
                structures[m.set as usize].insert_local(m.pos_u as usize, m.pos_v as usize);
            }
        }
        probe(&EdgeProbe {
            edge: e.id,
            u: e.u,
            v: e.v,
            memberships: le,
            unreachable: &unreachable,
            accepted,
        });
        per_edge.push(EdgeDecision {
            fraction,
            trials: le.len(),
            empty_membership: empty,
            ..EdgeDecision::plain(e.id, accepted)
        });
    }
    let stats = SpannerStats {
        sets: system.len(),
        reachability_words: reachability_words(&structures),
        preprocess,
        main: main_start.elapsed(),
        ..stats
    };
    SpannerOutput::assemble(g, per_edge, stats)
}

fn reachability_words<R: HopReachability>(structures: &[R]) -> usize {
    structures.iter().map(|r| r.storage_words()).sum()
}
