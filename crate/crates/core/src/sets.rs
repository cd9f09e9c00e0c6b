//! Vertex-subset systems standing in for random fault-avoidance experiments.
//!
//! A [`SetSystem`] holds subsets `V_0..V_{alpha-1}` of the vertices together
//! with, for every vertex `v`, the sorted list `L_v` of sets containing it.
//! Membership of an edge, `L_e = L_u ∩ L_v`, is a linear merge of two such
//! lists.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::combinatorics::Subsets;
use crate::hashing::HashFamily;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SetError {
    #[error("hash range {range} is smaller than 4*delta*f = {needed} buckets")]
    RangeTooSmall { range: usize, needed: usize },
    #[error("hash domain of size {domain} cannot hold {n} vertices")]
    DomainTooSmall { domain: u64, n: usize },
    #[error("exhaustive audit would examine {pairs} (edge, fault set) pairs, above the cap of {cap}")]
    AuditTooLarge { pairs: u128, cap: u128 },
    #[error("invalid set-system parameter: {0}")]
    InvalidParameter(String),
}

/// Where a set system came from.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Provenance {
    Random {
        f: usize,
        c: f64,
        seed: Option<u64>,
    },
    Hash {
        family: String,
        members: usize,
        range: usize,
        delta: usize,
    },
    Explicit,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SetSystem {
    n: usize,
    sets: Vec<Vec<usize>>,
    per_vertex: Vec<Vec<u32>>,
    /// `per_vertex_pos[v][j]` is the index of `v` inside `sets[per_vertex[v][j]]`.
    per_vertex_pos: Vec<Vec<u32>>,
    provenance: Provenance,
}

/// One entry of `L_e` together with the positions of both endpoints inside
/// the set, so that per-set structures can be addressed without a search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Membership {
    pub set: u32,
    pub pos_u: u32,
    pub pos_v: u32,
}

impl SetSystem {
    /// Builds the system and its per-vertex index. Each set is sorted and
    /// deduplicated; vertices must be below `n`.
    pub fn from_sets(n: usize, sets: Vec<Vec<usize>>, provenance: Provenance) -> Self {
        let mut sets = sets;
        let mut per_vertex = vec![Vec::new(); n];
        let mut per_vertex_pos = vec![Vec::new(); n];
        for (i, set) in sets.iter_mut().enumerate() {
            set.sort_unstable();
            set.dedup();
            for (pos, &v) in set.iter().enumerate() {
                assert!(v < n, "vertex {v} outside 0..{n}");
                per_vertex[v].push(i as u32);
                per_vertex_pos[v].push(pos as u32);
            }
        }
        Self {
            n,
            sets,
            per_vertex,
            per_vertex_pos,
            provenance,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of sets, `alpha`.
    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    pub fn set(&self, i: usize) -> &[usize] {
        &self.sets[i]
    }

    /// `L_v`: sorted indices of the sets containing `v`.
    pub fn per_vertex(&self, v: usize) -> &[u32] {
        &self.per_vertex[v]
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn contains(&self, set: usize, v: usize) -> bool {
        self.sets[set].binary_search(&v).is_ok()
    }

    /// `L_e = L_u ∩ L_v` by a single merge of the two sorted lists.
    pub fn edge_membership(&self, u: usize, v: usize) -> Vec<u32> {
        self.edge_membership_positions(u, v)
            .into_iter()
            .map(|m| m.set)
            .collect()
    }

    pub fn edge_membership_positions(&self, u: usize, v: usize) -> Vec<Membership> {
        let (lu, pu) = (&self.per_vertex[u], &self.per_vertex_pos[u]);
        let (lv, pv) = (&self.per_vertex[v], &self.per_vertex_pos[v]);
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < lu.len() && j < lv.len() {
            match lu[i].cmp(&lv[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    out.push(Membership {
                        set: lu[i],
                        pos_u: pu[i],
                        pos_v: pv[j],
                    });
                    i += 1;
                    j += 1;
                }
            }
        }
        out
    }

    /// Rebuilds `L_v` from the sets by a full scan.
    pub fn rebuild_per_vertex(&self) -> Vec<Vec<u32>> {
        (0..self.n)
            .map(|v| {
                (0..self.sets.len() as u32)
                    .filter(|&i| self.contains(i as usize, v))
                    .collect()
            })
            .collect()
    }

    /// The scale against which `|L_e|` and avoiding-set counts are reported:
    /// the family size for hash systems, `alpha / f^2` otherwise.
    pub fn normalizer(&self, f: usize) -> f64 {
        match &self.provenance {
            Provenance::Hash { members, .. } => *members as f64,
            _ => self.sets.len() as f64 / (f.max(1) * f.max(1)) as f64,
        }
    }
}

/// `{u, v}` plus every other vertex independently with probability `1/(2f)`.
pub fn sample_subgraph_vertices<R: Rng + ?Sized>(
    n: usize,
    u: usize,
    v: usize,
    f: usize,
    rng: &mut R,
) -> Vec<usize> {
    let mut out = Vec::new();
    sample_into(n, f, rng, &mut out);
    for x in [u, v] {
        if let Err(pos) = out.binary_search(&x) {
            out.insert(pos, x);
        }
    }
    out
}

/// Bernoulli(1/(2f)) subset of `0..n` in increasing order, drawn by
/// geometric skipping so the cost is proportional to the output size.
pub(crate) fn sample_into<R: Rng + ?Sized>(n: usize, f: usize, rng: &mut R, out: &mut Vec<usize>) {
    out.clear();
    let p = 1.0 / (2.0 * f.max(1) as f64);
    if p >= 1.0 {
        out.extend(0..n);
        return;
    }
    let log_q = (-p).ln_1p();
    let mut next = 0usize;
    loop {
        let uniform: f64 = rng.gen();
        // number of failures before the next success
        let skip = ((1.0 - uniform).ln() / log_q).floor();
        if !skip.is_finite() || skip >= (n - next.min(n)) as f64 {
            break;
        }
        next += skip as usize;
        if next >= n {
            break;
        }
        out.push(next);
        next += 1;
    }
}

/// Number of random sets, `ceil(c * f^3 * ln n)`.
pub fn random_system_size(n: usize, f: usize, c: f64) -> usize {
    (c * (f * f * f) as f64 * (n as f64).ln()).ceil().max(1.0) as usize
}

/// `ceil(c f^3 ln n)` sets, each containing every vertex independently with
/// probability `1/(2f)`.
pub fn random_system<R: Rng + ?Sized>(
    n: usize,
    f: usize,
    c: f64,
    rng: &mut R,
) -> Result<SetSystem, SetError> {
    build_random(n, f, c, rng, None)
}

/// [`random_system`] driven by a ChaCha8 stream seeded with `seed`.
pub fn random_system_seeded(n: usize, f: usize, c: f64, seed: u64) -> Result<SetSystem, SetError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    build_random(n, f, c, &mut rng, Some(seed))
}

fn build_random<R: Rng + ?Sized>(
    n: usize,
    f: usize,
    c: f64,
    rng: &mut R,
    seed: Option<u64>,
) -> Result<SetSystem, SetError> {
    if f == 0 {
        return Err(SetError::InvalidParameter("f must be at least 1".into()));
    }
    if !(c > 0.0 && c.is_finite()) {
        return Err(SetError::InvalidParameter(format!("c must be positive, got {c}")));
    }
    if n < 2 {
        return Err(SetError::InvalidParameter(format!("n must be at least 2, got {n}")));
    }
    let alpha = random_system_size(n, f, c);
    let mut sets = Vec::with_capacity(alpha);
    let mut buf = Vec::new();
    for _ in 0..alpha {
        sample_into(n, f, rng, &mut buf);
        sets.push(buf.clone());
    }
    Ok(SetSystem::from_sets(n, sets, Provenance::Random { f, c, seed }))
}

/// Sets `V_{h,{y,z}} = {v : h(v) ∈ {y, z}}` for every member `h` and every
/// unordered pair of distinct range values. Sets are numbered member-major,
/// then by `(y, z)` lexicographically.
pub fn hash_system<H: HashFamily>(n: usize, f: usize, family: &H) -> Result<SetSystem, SetError> {
    let range = family.range_size();
    let needed = 4 * family.delta() * f.max(1);
    if range < needed {
        return Err(SetError::RangeTooSmall { range, needed });
    }
    if family.domain_size() < n as u64 {
        return Err(SetError::DomainTooSmall {
            domain: family.domain_size(),
            n,
        });
    }
    let pairs = range * (range - 1) / 2;
    let mut sets = Vec::with_capacity(family.members() * pairs);
    let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); range];
    for member in 0..family.members() {
        buckets.iter_mut().for_each(Vec::clear);
        for v in 0..n {
            buckets[family.hash(member, v as u64)].push(v);
        }
        for y in 0..range {
            for z in y + 1..range {
                let mut set = Vec::with_capacity(buckets[y].len() + buckets[z].len());
                set.extend_from_slice(&buckets[y]);
                set.extend_from_slice(&buckets[z]);
                sets.push(set);
            }
        }
    }
    Ok(SetSystem::from_sets(
        n,
        sets,
        Provenance::Hash {
            family: family.describe(),
            members: family.members(),
            range,
            delta: family.delta(),
        },
    ))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum AuditMode {
    Exhaustive,
    Sampled { trials: usize },
}

/// Thresholds an audit checks the observed constants against.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AuditBounds {
    /// `max_i |V_i| * f / n` must not exceed this.
    pub max_c1: f64,
    /// `max_e |L_e| / normalizer` must not exceed this.
    pub max_c2: f64,
    /// `min_(e,F) |{i in L_e : F ∩ V_i = ∅}| / normalizer` must reach this.
    pub min_c3: f64,
}

impl AuditBounds {
    /// Hash systems: `|V_i| <= 4n/f`, `|L_e| <= (1 + delta)|H|` and
    /// `(3/8 - 1/(4f))|H|` avoiding sets. Random and explicit systems:
    /// `|V_i| <= e n/f` and `|L_e| <= e alpha/f^2` (four times the mean of
    /// each, the Chernoff tail scale), and at least one avoiding set.
    pub fn for_system(system: &SetSystem, f: usize) -> Self {
        let f = f.max(1) as f64;
        match system.provenance() {
            Provenance::Hash { delta, .. } => Self {
                max_c1: 4.0,
                max_c2: 1.0 + *delta as f64,
                min_c3: 3.0 / 8.0 - 1.0 / (4.0 * f),
            },
            _ => Self {
                max_c1: std::f64::consts::E,
                max_c2: std::f64::consts::E,
                min_c3: f64::MIN_POSITIVE,
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "property", rename_all = "snake_case")]
pub enum AuditViolation {
    SetSize { set: usize, size: usize },
    Membership { u: usize, v: usize, size: usize },
    Avoidance { u: usize, v: usize, faults: Vec<usize>, avoiding: usize },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AuditReport {
    pub mode: AuditMode,
    pub n: usize,
    pub f: usize,
    pub sets: usize,
    pub normalizer: f64,
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
    pub bounds: AuditBounds,
    pub checked_pairs: u64,
    pub violation_count: u64,
    /// The first violations found, at most [`AuditReport::MAX_LISTED`].
    pub violations: Vec<AuditViolation>,
}

impl AuditReport {
    pub const MAX_LISTED: usize = 32;

    pub fn passed(&self) -> bool {
        self.violation_count == 0
    }

    fn record(&mut self, violation: AuditViolation) {
        self.violation_count += 1;
        if self.violations.len() < Self::MAX_LISTED {
            self.violations.push(violation);
        }
    }
}

/// Upper limit on `(edge, F)` pairs for exhaustive audits.
pub const AUDIT_PAIR_CAP: u128 = 50_000_000;

/// Audits a system with the default bounds for its provenance.
pub fn audit_system<R: Rng + ?Sized>(
    system: &SetSystem,
    f: usize,
    mode: AuditMode,
    rng: &mut R,
) -> Result<AuditReport, SetError> {
    let bounds = AuditBounds::for_system(system, f);
    audit_system_with(system, f, mode, bounds, rng)
}

/// Measures the three set-system properties over the complete graph on
/// `0..n`: set sizes, edge memberships, and for each edge the number of
/// member sets that avoid a fault set `F ⊆ V \ {u, v}`, `|F| <= f`.
///
/// Removing more vertices can only shrink the avoiding count, so fault sets
/// are enumerated (or drawn) at the maximal size `min(f, n - 2)`.
pub fn audit_system_with<R: Rng + ?Sized>(
    system: &SetSystem,
    f: usize,
    mode: AuditMode,
    bounds: AuditBounds,
    rng: &mut R,
) -> Result<AuditReport, SetError> {
    let n = system.n();
    let fault_size = f.min(n.saturating_sub(2));
    let normalizer = system.normalizer(f);
    if let AuditMode::Exhaustive = mode {
        let pairs = (n as u128 * n.saturating_sub(1) as u128 / 2)
            * crate::combinatorics::binomial(n.saturating_sub(2) as u64, fault_size as u64);
        if pairs > AUDIT_PAIR_CAP {
            return Err(SetError::AuditTooLarge {
                pairs,
                cap: AUDIT_PAIR_CAP,
            });
        }
    }
    if let AuditMode::Sampled { trials: 0 } = mode {
        return Err(SetError::InvalidParameter("sampled audit needs at least one trial".into()));
    }

    let mut report = AuditReport {
        mode,
        n,
        f,
        sets: system.len(),
        normalizer,
        c1: 0.0,
        c2: 0.0,
        c3: f64::INFINITY,
        bounds,
        checked_pairs: 0,
        violation_count: 0,
        violations: Vec::new(),
    };

    for (i, set) in system.sets().iter().enumerate() {
        let c1 = set.len() as f64 * f.max(1) as f64 / n.max(1) as f64;
        report.c1 = report.c1.max(c1);
        if c1 > bounds.max_c1 {
            report.record(AuditViolation::SetSize {
                set: i,
                size: set.len(),
            });
        }
    }

    let check_pair = |report: &mut AuditReport, u: usize, v: usize, membership: &[u32]| {
        let c2 = membership.len() as f64 / normalizer;
        report.c2 = report.c2.max(c2);
        if c2 > bounds.max_c2 {
            report.record(AuditViolation::Membership {
                u,
                v,
                size: membership.len(),
            });
        }
    };
    let check_fault = |report: &mut AuditReport, u: usize, v: usize, membership: &[u32], faults: &[usize]| {
        let avoiding = membership
            .iter()
            .filter(|&&i| faults.iter().all(|&x| !system.contains(i as usize, x)))
            .count();
        report.checked_pairs += 1;
        let c3 = avoiding as f64 / normalizer;
        report.c3 = report.c3.min(c3);
        if c3 < bounds.min_c3 {
            report.record(AuditViolation::Avoidance {
                u,
                v,
                faults: faults.to_vec(),
                avoiding,
            });
        }
    };

    match mode {
        AuditMode::Exhaustive => {
            for u in 0..n {
                for v in u + 1..n {
                    let membership = system.edge_membership(u, v);
                    check_pair(&mut report, u, v, &membership);
                    let others: Vec<usize> = (0..n).filter(|&x| x != u && x != v).collect();
                    for picks in Subsets::new(others.len(), fault_size) {
                        let faults: Vec<usize> = picks.iter().map(|&p| others[p]).collect();
                        check_fault(&mut report, u, v, &membership, &faults);
                    }
                }
            }
        }
        AuditMode::Sampled { trials } => {
            if n >= 2 {
                for _ in 0..trials {
                    let u = rng.gen_range(0..n);
                    let mut v = rng.gen_range(0..n - 1);
                    if v >= u {
                        v += 1;
                    }
                    let (u, v) = (u.min(v), u.max(v));
                    let membership = system.edge_membership(u, v);
                    check_pair(&mut report, u, v, &membership);
                    let others: Vec<usize> = (0..n).filter(|&x| x != u && x != v).collect();
                    let faults: Vec<usize> =
                        rand::seq::index::sample(rng, others.len(), fault_size)
                            .into_iter()
                            .map(|p| others[p])
                            .collect();
                    check_fault(&mut report, u, v, &membership, &faults);
                }
            }
        }
    }
    if report.c3.is_infinite() {
        report.c3 = 0.0;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hashing::PolyHashFamily;

    struct Identity {
        range: usize,
    }

    impl HashFamily for Identity {
        fn members(&self) -> usize {
            1
        }
        fn range_size(&self) -> usize {
            self.range
        }
        fn domain_size(&self) -> u64 {
            self.range as u64
        }
        fn delta(&self) -> usize {
            1
        }
        fn hash(&self, _member: usize, x: u64) -> usize {
            x as usize
        }
        fn describe(&self) -> String {
            "identity".into()
        }
    }

    #[test]
    fn two_vertex_sample_is_the_edge() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for f in [1, 2, 7] {
            assert_eq!(sample_subgraph_vertices(2, 1, 0, f, &mut rng), vec![0, 1]);
        }
    }

    #[test]
    fn vanishing_probability_keeps_only_endpoints() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let f = 50 * 1_000_000;
        let hits = (0..1000)
            .filter(|_| sample_subgraph_vertices(50, 3, 9, f, &mut rng) == vec![3, 9])
            .count();
        assert!(hits >= 999);
    }

    #[test]
    fn membership_merge() {
        let sys = SetSystem::from_sets(
            6,
            vec![vec![0], vec![0, 4], vec![2], vec![0, 4, 5], vec![1], vec![4]],
            Provenance::Explicit,
        );
        assert_eq!(sys.per_vertex(0), &[0, 1, 3]);
        assert_eq!(sys.per_vertex(4), &[1, 3, 5]);
        assert_eq!(sys.edge_membership(0, 4), vec![1, 3]);
        let pos = sys.edge_membership_positions(5, 4);
        assert_eq!(pos, vec![Membership { set: 3, pos_u: 2, pos_v: 1 }]);
    }

    #[test]
    fn membership_of_ubiquitous_pair() {
        let sets = vec![vec![0, 1, 2]; 5];
        let sys = SetSystem::from_sets(3, sets, Provenance::Explicit);
        assert_eq!(sys.edge_membership(0, 2), vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn random_system_determinism_and_size() {
        let a = random_system_seeded(2, 1, 5.0, 42).unwrap();
        let b = random_system_seeded(2, 1, 5.0, 42).unwrap();
        assert_eq!(a.len(), 4);
        assert_eq!(a, b);
        assert_eq!(a.rebuild_per_vertex(), (0..2).map(|v| a.per_vertex(v).to_vec()).collect::<Vec<_>>());
    }

    #[test]
    fn random_system_rejects_bad_parameters() {
        assert!(random_system_seeded(10, 0, 1.0, 0).is_err());
        assert!(random_system_seeded(10, 1, 0.0, 0).is_err());
        assert!(random_system_seeded(1, 1, 1.0, 0).is_err());
    }

    #[test]
    fn bijective_hash_covers_each_pair_once() {
        let sys = hash_system(4, 1, &Identity { range: 4 }).unwrap();
        assert_eq!(sys.len(), 6);
        assert!(sys.sets().iter().all(|s| s.len() == 2));
        for u in 0..4 {
            for v in u + 1..4 {
                assert_eq!(sys.edge_membership(u, v).len(), 1);
            }
        }
    }

    #[test]
    fn hash_system_rejects_small_range() {
        let err = hash_system(4, 2, &Identity { range: 4 }).unwrap_err();
        assert_eq!(err, SetError::RangeTooSmall { range: 4, needed: 8 });
    }

    #[test]
    fn hash_system_is_deterministic() {
        let fam = PolyHashFamily::new(6, 3).unwrap();
        let a = hash_system(16, 1, &fam).unwrap();
        let b = hash_system(16, 1, &fam).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 8 * 28);
    }

    #[test]
    fn full_sets_violate_avoidance() {
        let sys = SetSystem::from_sets(5, vec![(0..5).collect(); 8], Provenance::Explicit);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let report = audit_system(&sys, 1, AuditMode::Exhaustive, &mut rng).unwrap();
        assert_eq!(report.c3, 0.0);
        assert!(!report.passed());
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, AuditViolation::Avoidance { avoiding: 0, .. })));
    }

    #[test]
    fn exhaustive_cap() {
        let sys = SetSystem::from_sets(400, vec![vec![0]], Provenance::Explicit);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(matches!(
            audit_system(&sys, 3, AuditMode::Exhaustive, &mut rng),
            Err(SetError::AuditTooLarge { .. })
        ));
        assert!(audit_system(&sys, 3, AuditMode::Sampled { trials: 0 }, &mut rng).is_err());
    }
}
