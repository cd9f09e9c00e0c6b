//! Undirected weighted simple graphs.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use thiserror::Error;

use crate::paths::{self, Adjacency, Neighbor};
use crate::weight::{Distance, Weight};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GraphError {
    #[error("edge ({u}, {v}) has an endpoint outside 0..{n}")]
    EndpointOutOfRange { u: usize, v: usize, n: usize },
    #[error("edge ({u}, {v}) has negative weight {weight}")]
    NegativeWeight { u: usize, v: usize, weight: String },
    #[error("edge ({u}, {v}) has non-finite weight {weight}")]
    NonFiniteWeight { u: usize, v: usize, weight: String },
    #[error("vertex {0} is excluded from the query")]
    ExcludedEndpoint(usize),
    #[error("vertex {vertex} outside 0..{n}")]
    VertexOutOfRange { vertex: usize, n: usize },
}

/// One undirected edge. Endpoints are stored with `u < v`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EdgeRecord<W> {
    pub id: usize,
    pub u: usize,
    pub v: usize,
    pub weight: W,
}

impl<W> EdgeRecord<W> {
    pub fn endpoints(&self) -> (usize, usize) {
        (self.u, self.v)
    }

    pub fn other(&self, x: usize) -> usize {
        if x == self.u {
            self.v
        } else {
            self.u
        }
    }
}

/// Membership mask over the vertices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexSet {
    members: Vec<bool>,
    len: usize,
}

impl VertexSet {
    pub fn empty(n: usize) -> Self {
        Self {
            members: vec![false; n],
            len: 0,
        }
    }

    pub fn full(n: usize) -> Self {
        Self {
            members: vec![true; n],
            len: n,
        }
    }

    pub fn from_vertices(n: usize, vertices: impl IntoIterator<Item = usize>) -> Self {
        let mut set = Self::empty(n);
        for v in vertices {
            set.insert(v);
        }
        set
    }

    pub fn insert(&mut self, v: usize) -> bool {
        let fresh = !self.members[v];
        if fresh {
            self.members[v] = true;
            self.len += 1;
        }
        fresh
    }

    pub fn remove(&mut self, v: usize) -> bool {
        let present = self.members[v];
        if present {
            self.members[v] = false;
            self.len -= 1;
        }
        present
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        self.members.get(v).copied().unwrap_or(false)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn universe(&self) -> usize {
        self.members.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members
            .iter()
            .enumerate()
            .filter_map(|(v, &m)| m.then_some(v))
    }

    pub fn complement(&self) -> Self {
        Self {
            members: self.members.iter().map(|m| !m).collect(),
            len: self.members.len() - self.len,
        }
    }
}

/// Immutable undirected weighted graph on vertices `0..n`.
///
/// Construction goes through [`WeightedGraph::normalize`], which enforces
/// simplicity and admissible weights. Edge ids are the positions of the
/// edges in canonical `(u, v)` order.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightedGraph<W> {
    n: usize,
    edges: Vec<EdgeRecord<W>>,
    adjacency: Vec<Vec<Neighbor<W>>>,
}

impl<W: Weight> WeightedGraph<W> {
    /// Builds a simple graph from raw `(u, v, weight)` triples.
    ///
    /// Self-loops are dropped and parallel edges collapse to the minimum
    /// weight.
    pub fn normalize(
        raw_edges: impl IntoIterator<Item = (usize, usize, W)>,
        n: usize,
    ) -> Result<Self, GraphError> {
        let mut best: BTreeMap<(usize, usize), W> = BTreeMap::new();
        for (u, v, weight) in raw_edges {
            if u >= n || v >= n {
                return Err(GraphError::EndpointOutOfRange { u, v, n });
            }
            if weight.partial_cmp(&W::zero()) == Some(Ordering::Less) {
                return Err(GraphError::NegativeWeight {
                    u,
                    v,
                    weight: weight.to_string(),
                });
            }
            if !weight.is_admissible() {
                return Err(GraphError::NonFiniteWeight {
                    u,
                    v,
                    weight: weight.to_string(),
                });
            }
            if u == v {
                continue;
            }
            let key = (u.min(v), u.max(v));
            best.entry(key)
                .and_modify(|w| {
                    if weight.total_cmp(w) == Ordering::Less {
                        *w = weight;
                    }
                })
                .or_insert(weight);
        }
        let edges = best
            .into_iter()
            .enumerate()
            .map(|(id, ((u, v), weight))| EdgeRecord { id, u, v, weight })
            .collect();
        Ok(Self::from_canonical(n, edges))
    }

    /// `edges` must already be simple, canonical and sorted by `(u, v)`.
    fn from_canonical(n: usize, edges: Vec<EdgeRecord<W>>) -> Self {
        let mut adjacency = vec![Vec::new(); n];
        for e in &edges {
            adjacency[e.u].push(Neighbor {
                vertex: e.v,
                weight: e.weight,
                edge: e.id,
            });
            adjacency[e.v].push(Neighbor {
                vertex: e.u,
                weight: e.weight,
                edge: e.id,
            });
        }
        Self {
            n,
            edges,
            adjacency,
        }
    }

    pub fn empty(n: usize) -> Self {
        Self::from_canonical(n, Vec::new())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[EdgeRecord<W>] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> &EdgeRecord<W> {
        &self.edges[id]
    }

    pub fn neighbors(&self, v: usize) -> &[Neighbor<W>] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    /// Id of the edge `{u, v}` if present.
    pub fn find_edge(&self, u: usize, v: usize) -> Option<usize> {
        let (a, b) = (u.min(v), u.max(v));
        self.edges
            .binary_search_by(|e| (e.u, e.v).cmp(&(a, b)))
            .ok()
    }

    /// Edges in greedy processing order: nondecreasing weight, ties broken
    /// by `(u, v, id)`.
    pub fn sorted_edges(&self) -> Vec<EdgeRecord<W>> {
        let mut order = self.edges.clone();
        order.sort_by(|a, b| {
            a.weight
                .total_cmp(&b.weight)
                .then_with(|| (a.u, a.v, a.id).cmp(&(b.u, b.v, b.id)))
        });
        order
    }

    /// The subgraph on the same vertex set keeping the given edge ids.
    /// Ids in the result are renumbered canonically.
    pub fn edge_subgraph(&self, ids: impl IntoIterator<Item = usize>) -> Self {
        let mut keep: Vec<usize> = ids.into_iter().collect();
        keep.sort_unstable();
        keep.dedup();
        let edges = keep
            .into_iter()
            .enumerate()
            .map(|(id, old)| EdgeRecord {
                id,
                ..self.edges[old]
            })
            .collect();
        Self::from_canonical(self.n, edges)
    }

    /// Same graph with vertex `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        Self::normalize(
            self.edges.iter().map(|e| (perm[e.u], perm[e.v], e.weight)),
            self.n,
        )
        .expect("relabelling a valid graph stays valid")
    }

    /// True when every edge of `self` appears in `other` with the same weight.
    pub fn is_subgraph_of(&self, other: &Self) -> bool {
        self.n == other.n
            && self.edges.iter().all(|e| {
                other
                    .find_edge(e.u, e.v)
                    .is_some_and(|id| other.edge(id).weight.total_cmp(&e.weight).is_eq())
            })
    }

    fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v < self.n {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange {
                vertex: v,
                n: self.n,
            })
        }
    }

    /// Exact shortest-path weight from `u` to `v` after deleting `excluded`.
    pub fn weighted_distance(
        &self,
        u: usize,
        v: usize,
        excluded: &VertexSet,
    ) -> Result<Distance<W>, GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        for x in [u, v] {
            if excluded.contains(x) {
                return Err(GraphError::ExcludedEndpoint(x));
            }
        }
        Ok(paths::dijkstra_pair(self, u, v, |x| !excluded.contains(x), None))
    }

    /// Whether the hop distance between `u` and `v` is at most `limit`.
    pub fn hop_distance_at_most(&self, u: usize, v: usize, limit: usize) -> bool {
        u < self.n && v < self.n && paths::bfs_within(self, u, v, limit, |_| true)
    }
}

impl<W: Weight> Adjacency<W> for WeightedGraph<W> {
    fn vertex_count(&self) -> usize {
        self.n
    }

    fn neighbors(&self, v: usize) -> &[Neighbor<W>] {
        &self.adjacency[v]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type G = WeightedGraph<f64>;

    fn path3() -> G {
        G::normalize([(0, 1, 1.0), (1, 2, 1.0)], 3).unwrap()
    }

    #[test]
    fn parallel_edges_keep_minimum() {
        let g = G::normalize([(0, 1, 1.0), (1, 0, 2.0)], 2).unwrap();
        assert_eq!(g.m(), 1);
        assert_eq!(
            g.edge(0),
            &EdgeRecord {
                id: 0,
                u: 0,
                v: 1,
                weight: 1.0
            }
        );
    }

    #[test]
    fn self_loops_dropped() {
        let g = G::normalize([(0, 0, 1.0)], 1).unwrap();
        assert_eq!(g.m(), 0);
    }

    #[test]
    fn disjoint_edges_kept() {
        let g = G::normalize([(0, 1, 1.0), (2, 3, 0.5)], 4).unwrap();
        assert_eq!(g.m(), 2);
        assert_eq!(g.edge(1).endpoints(), (2, 3));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            G::normalize([(0, 2, 1.0)], 2),
            Err(GraphError::EndpointOutOfRange { .. })
        ));
        assert!(matches!(
            G::normalize([(0, 1, -1.0)], 2),
            Err(GraphError::NegativeWeight { .. })
        ));
        assert!(matches!(
            G::normalize([(0, 1, f64::NAN)], 2),
            Err(GraphError::NonFiniteWeight { .. })
        ));
        assert!(matches!(
            G::normalize([(0, 1, f64::INFINITY)], 2),
            Err(GraphError::NonFiniteWeight { .. })
        ));
    }

    #[test]
    fn sorted_by_weight_then_endpoints() {
        let g = G::normalize([(0, 1, 3.0), (0, 2, 1.0), (1, 2, 2.0)], 3).unwrap();
        let ids: Vec<_> = g.sorted_edges().iter().map(|e| e.id).collect();
        assert_eq!(ids, vec![1, 2, 0]);

        let g = G::normalize([(2, 3, 1.0), (0, 3, 1.0), (0, 1, 1.0)], 4).unwrap();
        let ends: Vec<_> = g.sorted_edges().iter().map(|e| e.endpoints()).collect();
        assert_eq!(ends, vec![(0, 1), (0, 3), (2, 3)]);

        assert!(G::empty(3).sorted_edges().is_empty());
    }

    #[test]
    fn distances_on_path() {
        let g = path3();
        let none = VertexSet::empty(3);
        assert_eq!(g.weighted_distance(0, 2, &none), Ok(Distance::Finite(2.0)));
        let mid = VertexSet::from_vertices(3, [1]);
        assert_eq!(g.weighted_distance(0, 2, &mid), Ok(Distance::Infinite));
        assert_eq!(
            g.weighted_distance(1, 2, &mid),
            Err(GraphError::ExcludedEndpoint(1))
        );
    }

    #[test]
    fn hop_limits_on_cycle() {
        let c5 = G::normalize((0..5).map(|i| (i, (i + 1) % 5, 1.0)), 5).unwrap();
        assert!(c5.hop_distance_at_most(0, 1, 1));
        assert!(!c5.hop_distance_at_most(0, 2, 1));
        assert!(c5.hop_distance_at_most(0, 2, 2));
        assert!(c5.hop_distance_at_most(3, 3, 0));
    }

    #[test]
    fn zero_weight_edges_allowed() {
        let g = G::normalize([(0, 1, 0.0), (1, 2, 0.0)], 3).unwrap();
        let d = g.weighted_distance(0, 2, &VertexSet::empty(3)).unwrap();
        assert_eq!(d, Distance::Finite(0.0));
    }

    #[test]
    fn integer_weights() {
        let g = WeightedGraph::<u64>::normalize([(0, 1, 4), (1, 2, 3), (0, 2, 9)], 3).unwrap();
        let d = g.weighted_distance(0, 2, &VertexSet::empty(3)).unwrap();
        assert_eq!(d, Distance::Finite(7));
    }

    #[test]
    fn subgraph_and_lookup() {
        let g = G::normalize([(0, 1, 1.0), (1, 2, 2.0), (0, 2, 5.0)], 3).unwrap();
        let h = g.edge_subgraph([2, 0]);
        assert_eq!(h.m(), 2);
        assert!(h.is_subgraph_of(&g));
        assert!(!g.is_subgraph_of(&h));
        // canonical ids: (0,1)=0, (0,2)=1, (1,2)=2
        assert_eq!(g.find_edge(2, 1), Some(2));
        assert_eq!(h.find_edge(0, 2), None);
        assert_eq!(h.find_edge(2, 1), Some(1));
    }
}
