//! Shortest-path and hop-limited search over any adjacency structure.
//!
//! Searches take a reusable [`SearchWorkspace`] so that callers issuing many
//! small queries (the sampled-subgraph tests) pay only for the vertices they
//! actually touch.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, VecDeque};

use crate::weight::{Distance, Weight};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Neighbor<W> {
    pub vertex: usize,
    pub weight: W,
    pub edge: usize,
}

/// Read access to an undirected adjacency list.
pub trait Adjacency<W> {
    fn vertex_count(&self) -> usize;
    fn neighbors(&self, v: usize) -> &[Neighbor<W>];
}

struct HeapEntry<W> {
    dist: W,
    vertex: usize,
}

impl<W: Weight> PartialEq for HeapEntry<W> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl<W: Weight> Eq for HeapEntry<W> {}

impl<W: Weight> PartialOrd for HeapEntry<W> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<W: Weight> Ord for HeapEntry<W> {
    // min-heap on distance
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .dist
            .total_cmp(&self.dist)
            .then_with(|| other.vertex.cmp(&self.vertex))
    }
}

/// Scratch space reused across searches on graphs with at most `n` vertices.
pub struct SearchWorkspace<W> {
    dist: Vec<W>,
    hops: Vec<usize>,
    stamp: Vec<u32>,
    epoch: u32,
    heap: BinaryHeap<HeapEntry<W>>,
    queue: VecDeque<usize>,
}

impl<W: Weight> SearchWorkspace<W> {
    pub fn new(n: usize) -> Self {
        Self {
            dist: vec![W::zero(); n],
            hops: vec![0; n],
            stamp: vec![0; n],
            epoch: 0,
            heap: BinaryHeap::new(),
            queue: VecDeque::new(),
        }
    }

    fn reset(&mut self, n: usize) {
        if self.stamp.len() < n {
            self.dist.resize(n, W::zero());
            self.hops.resize(n, 0);
            self.stamp.resize(n, 0);
        }
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.stamp.iter_mut().for_each(|s| *s = 0);
            self.epoch = 1;
        }
        self.heap.clear();
        self.queue.clear();
    }

    #[inline]
    fn seen(&self, v: usize) -> bool {
        self.stamp[v] == self.epoch
    }
}

/// Weighted distance from `src` to `dst` using only vertices accepted by
/// `allowed`. With a `cutoff`, the search stops once every remaining
/// candidate is farther than `cutoff` and reports `Infinite` in that case.
pub fn dijkstra_pair<W: Weight, A: Adjacency<W> + ?Sized>(
    graph: &A,
    src: usize,
    dst: usize,
    allowed: impl Fn(usize) -> bool,
    cutoff: Option<W>,
) -> Distance<W> {
    let mut ws = SearchWorkspace::new(graph.vertex_count());
    dijkstra_pair_in(&mut ws, graph, src, dst, allowed, cutoff)
}

pub fn dijkstra_pair_in<W: Weight, A: Adjacency<W> + ?Sized>(
    ws: &mut SearchWorkspace<W>,
    graph: &A,
    src: usize,
    dst: usize,
    allowed: impl Fn(usize) -> bool,
    cutoff: Option<W>,
) -> Distance<W> {
    ws.reset(graph.vertex_count());
    ws.stamp[src] = ws.epoch;
    ws.dist[src] = W::zero();
    ws.heap.push(HeapEntry {
        dist: W::zero(),
        vertex: src,
    });
    while let Some(HeapEntry { dist, vertex }) = ws.heap.pop() {
        if dist.total_cmp(&ws.dist[vertex]) == Ordering::Greater {
            continue;
        }
        if vertex == dst {
            return Distance::Finite(dist);
        }
        for nb in graph.neighbors(vertex) {
            let next = dist + nb.weight;
            if let Some(c) = cutoff {
                if next.total_cmp(&c) == Ordering::Greater {
                    continue;
                }
            }
            if !allowed(nb.vertex) {
                continue;
            }
            if !ws.seen(nb.vertex) || next.total_cmp(&ws.dist[nb.vertex]) == Ordering::Less {
                ws.stamp[nb.vertex] = ws.epoch;
                ws.dist[nb.vertex] = next;
                ws.heap.push(HeapEntry {
                    dist: next,
                    vertex: nb.vertex,
                });
            }
        }
    }
    Distance::Infinite
}

/// Distances from `src` to every vertex, restricted to `allowed` vertices.
pub fn dijkstra_all<W: Weight, A: Adjacency<W> + ?Sized>(
    graph: &A,
    src: usize,
    allowed: impl Fn(usize) -> bool,
) -> Vec<Distance<W>> {
    let n = graph.vertex_count();
    let mut out = vec![Distance::Infinite; n];
    let mut heap = BinaryHeap::new();
    out[src] = Distance::Finite(W::zero());
    heap.push(HeapEntry {
        dist: W::zero(),
        vertex: src,
    });
    while let Some(HeapEntry { dist, vertex }) = heap.pop() {
        if Distance::Finite(dist) > out[vertex] {
            continue;
        }
        for nb in graph.neighbors(vertex) {
            if !allowed(nb.vertex) {
                continue;
            }
            let next = Distance::Finite(dist + nb.weight);
            if next < out[nb.vertex] {
                out[nb.vertex] = next;
                heap.push(HeapEntry {
                    dist: dist + nb.weight,
                    vertex: nb.vertex,
                });
            }
        }
    }
    out
}

/// True iff `dst` is within `limit` hops of `src` through `allowed` vertices.
pub fn bfs_within<W: Weight, A: Adjacency<W> + ?Sized>(
    graph: &A,
    src: usize,
    dst: usize,
    limit: usize,
    allowed: impl Fn(usize) -> bool,
) -> bool {
    let mut ws = SearchWorkspace::new(graph.vertex_count());
    bfs_within_in(&mut ws, graph, src, dst, limit, allowed)
}

pub fn bfs_within_in<W: Weight, A: Adjacency<W> + ?Sized>(
    ws: &mut SearchWorkspace<W>,
    graph: &A,
    src: usize,
    dst: usize,
    limit: usize,
    allowed: impl Fn(usize) -> bool,
) -> bool {
    if src == dst {
        return true;
    }
    ws.reset(graph.vertex_count());
    ws.stamp[src] = ws.epoch;
    ws.hops[src] = 0;
    ws.queue.push_back(src);
    while let Some(x) = ws.queue.pop_front() {
        let h = ws.hops[x];
        if h == limit {
            continue;
        }
        for nb in graph.neighbors(x) {
            let y = nb.vertex;
            if ws.seen(y) || !allowed(y) {
                continue;
            }
            if y == dst {
                return true;
            }
            ws.stamp[y] = ws.epoch;
            ws.hops[y] = h + 1;
            ws.queue.push_back(y);
        }
    }
    false
}

/// Unweighted hop distances from `src`; `None` for unreachable vertices.
/// The edge with id `skip_edge`, if given, is ignored.
pub fn bfs_hops<W: Weight, A: Adjacency<W> + ?Sized>(
    graph: &A,
    src: usize,
    skip_edge: Option<usize>,
) -> Vec<Option<usize>> {
    let mut hops = vec![None; graph.vertex_count()];
    let mut queue = VecDeque::new();
    hops[src] = Some(0);
    queue.push_back(src);
    while let Some(x) = queue.pop_front() {
        let h = hops[x].expect("queued vertices have a hop count");
        for nb in graph.neighbors(x) {
            if Some(nb.edge) == skip_edge || hops[nb.vertex].is_some() {
                continue;
            }
            hops[nb.vertex] = Some(h + 1);
            queue.push_back(nb.vertex);
        }
    }
    hops
}

/// Mutable adjacency used while a spanner is being grown edge by edge.
#[derive(Clone, Debug)]
pub struct GrowingGraph<W> {
    adjacency: Vec<Vec<Neighbor<W>>>,
    edges: usize,
}

impl<W: Weight> GrowingGraph<W> {
    pub fn new(n: usize) -> Self {
        Self {
            adjacency: vec![Vec::new(); n],
            edges: 0,
        }
    }

    pub fn add_edge(&mut self, u: usize, v: usize, weight: W, edge: usize) {
        self.adjacency[u].push(Neighbor {
            vertex: v,
            weight,
            edge,
        });
        self.adjacency[v].push(Neighbor {
            vertex: u,
            weight,
            edge,
        });
        self.edges += 1;
    }

    pub fn edge_count(&self) -> usize {
        self.edges
    }
}

impl<W: Weight> Adjacency<W> for GrowingGraph<W> {
    fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    fn neighbors(&self, v: usize) -> &[Neighbor<W>] {
        &self.adjacency[v]
    }
}
