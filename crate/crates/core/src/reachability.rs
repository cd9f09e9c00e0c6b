//! Hop-bounded reachability under edge insertions.
//!
//! For a vertex subset `V_i` and stretch parameter `k`, the layered graph has
//! nodes `(u, j)` for `u` in `V_i` and `j` in `0..2k`, chain arcs
//! `(u, j) -> (u, j+1)`, and for every undirected edge `{u, v}` the arcs
//! `(u, j) -> (v, j+1)` and `(v, j) -> (u, j+1)`. There is a path
//! `(u, 0) ~> (v, 2k-1)` exactly when the hop distance between `u` and `v`
//! is at most `2k - 1`.
//!
//! [`IncrementalReachability`] maintains the transitive closure of that DAG
//! as dense bit rows, one descendant row and one ancestor row per layered
//! node. Inserting an arc `x -> y` melds `desc(y)` into every ancestor of `x`
//! that does not already reach `y`, and symmetrically for ancestor rows, so
//! a query is a single bit test.

use std::collections::VecDeque;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReachabilityError {
    #[error("vertex {0} is not in the base vertex set")]
    NotABaseVertex(usize),
    #[error("cannot insert the self-loop ({0}, {0})")]
    SelfLoop(usize),
}

/// Common interface of the incremental structure and the recompute
/// fallback. Vertices are addressed either by global id or by their index
/// in the sorted base vertex list ("local" index).
pub trait HopReachability: Sized {
    /// `vertices` must be sorted and duplicate-free.
    fn with_vertices(vertices: Vec<usize>, k: usize) -> Self;

    fn base_vertices(&self) -> &[usize];

    fn k(&self) -> usize;

    fn insert_local(&mut self, a: usize, b: usize);

    fn reachable_local(&self, a: usize, b: usize) -> bool;

    /// Words of index storage, for memory reporting.
    fn storage_words(&self) -> usize {
        0
    }

    fn local_index(&self, v: usize) -> Option<usize> {
        self.base_vertices().binary_search(&v).ok()
    }

    fn insert_spanner_edge(&mut self, u: usize, v: usize) -> Result<(), ReachabilityError> {
        if u == v {
            return Err(ReachabilityError::SelfLoop(u));
        }
        let a = self
            .local_index(u)
            .ok_or(ReachabilityError::NotABaseVertex(u))?;
        let b = self
            .local_index(v)
            .ok_or(ReachabilityError::NotABaseVertex(v))?;
        self.insert_local(a, b);
        Ok(())
    }

    fn reachable(&self, u: usize, v: usize) -> Result<bool, ReachabilityError> {
        let a = self
            .local_index(u)
            .ok_or(ReachabilityError::NotABaseVertex(u))?;
        let b = self
            .local_index(v)
            .ok_or(ReachabilityError::NotABaseVertex(v))?;
        Ok(self.reachable_local(a, b))
    }
}

const WORD: usize = 64;

/// Transitive closure of a DAG whose nodes are arranged in layers, under
/// insertion of arcs that go from a layer to a strictly later one.
///
/// Node `(x, j)` is stored at layer `j`, position `x`. Descendant rows of
/// layer-`j` nodes only cover layers `j..layers` and ancestor rows only cover
/// layers `0..=j`, which halves the storage of a full square matrix.
#[derive(Clone, Debug)]
pub struct LayeredClosure {
    width: usize,
    layers: usize,
    /// u64 words per layer block
    stride: usize,
    desc: Vec<u64>,
    anc: Vec<u64>,
    desc_layer_start: Vec<usize>,
    anc_layer_start: Vec<usize>,
    scratch_anc: Vec<u64>,
    scratch_desc: Vec<u64>,
}

impl LayeredClosure {
    /// A closure over `width * layers` nodes with no arcs (reflexive only).
    pub fn new(width: usize, layers: usize) -> Self {
        let stride = width.div_ceil(WORD);
        let mut desc_layer_start = Vec::with_capacity(layers + 1);
        let mut anc_layer_start = Vec::with_capacity(layers + 1);
        let (mut d, mut a) = (0, 0);
        for j in 0..layers {
            desc_layer_start.push(d);
            anc_layer_start.push(a);
            d += width * (layers - j) * stride;
            a += width * (j + 1) * stride;
        }
        desc_layer_start.push(d);
        anc_layer_start.push(a);
        let mut closure = Self {
            width,
            layers,
            stride,
            desc: vec![0; d],
            anc: vec![0; a],
            desc_layer_start,
            anc_layer_start,
            scratch_anc: Vec::new(),
            scratch_desc: Vec::new(),
        };
        for j in 0..layers {
            for x in 0..width {
                closure.set_desc(x, j, x, j);
                closure.set_anc(x, j, x, j);
            }
        }
        closure
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn layers(&self) -> usize {
        self.layers
    }

    /// Words of bit storage held by the closure.
    pub fn storage_words(&self) -> usize {
        self.desc.len() + self.anc.len()
    }

    #[inline]
    fn desc_row(&self, x: usize, j: usize) -> usize {
        self.desc_layer_start[j] + x * (self.layers - j) * self.stride
    }

    #[inline]
    fn anc_row(&self, x: usize, j: usize) -> usize {
        self.anc_layer_start[j] + x * (j + 1) * self.stride
    }

    #[inline]
    fn desc_bit(&self, x: usize, j: usize, y: usize, l: usize) -> (usize, u64) {
        let word = self.desc_row(x, j) + (l - j) * self.stride + y / WORD;
        (word, 1u64 << (y % WORD))
    }

    #[inline]
    fn anc_bit(&self, y: usize, l: usize, x: usize, j: usize) -> (usize, u64) {
        let word = self.anc_row(y, l) + j * self.stride + x / WORD;
        (word, 1u64 << (x % WORD))
    }

    fn set_desc(&mut self, x: usize, j: usize, y: usize, l: usize) {
        let (w, m) = self.desc_bit(x, j, y, l);
        self.desc[w] |= m;
    }

    fn set_anc(&mut self, y: usize, l: usize, x: usize, j: usize) {
        let (w, m) = self.anc_bit(y, l, x, j);
        self.anc[w] |= m;
    }

    /// Whether `(x, j) ~> (y, l)`.
    #[inline]
    pub fn reaches(&self, x: usize, j: usize, y: usize, l: usize) -> bool {
        if l < j {
            return false;
        }
        let (w, m) = self.desc_bit(x, j, y, l);
        self.desc[w] & m != 0
    }

    /// Inserts the arc `(x, j) -> (y, l)`; requires `l > j`.
    pub fn insert_arc(&mut self, x: usize, j: usize, y: usize, l: usize) {
        assert!(l > j, "arcs must go to a strictly later layer");
        assert!(x < self.width && y < self.width && l < self.layers);
        if self.reaches(x, j, y, l) {
            return;
        }
        let stride = self.stride;
        // anc(x,j) covers layers 0..=j; desc(y,l) covers layers l..layers.
        let anc_len = (j + 1) * stride;
        let desc_len = (self.layers - l) * stride;
        let anc_start = self.anc_row(x, j);
        let desc_start = self.desc_row(y, l);
        self.scratch_anc.clear();
        self.scratch_anc
            .extend_from_slice(&self.anc[anc_start..anc_start + anc_len]);
        self.scratch_desc.clear();
        self.scratch_desc
            .extend_from_slice(&self.desc[desc_start..desc_start + desc_len]);

        // every ancestor s of (x,j) that misses (y,l) gains all of desc(y,l)
        for sj in 0..=j {
            for (wi, &word) in self.scratch_anc[sj * stride..(sj + 1) * stride]
                .iter()
                .enumerate()
            {
                let mut bits = word;
                while bits != 0 {
                    let sx = wi * WORD + bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    let (w, m) = self.desc_bit(sx, sj, y, l);
                    if self.desc[w] & m != 0 {
                        continue;
                    }
                    let row = self.desc_row(sx, sj) + (l - sj) * stride;
                    for (dst, src) in self.desc[row..row + desc_len]
                        .iter_mut()
                        .zip(&self.scratch_desc)
                    {
                        *dst |= *src;
                    }
                }
            }
        }
        // every descendant z of (y,l) not yet below (x,j) gains all of anc(x,j)
        for zl in l..self.layers {
            let block = (zl - l) * stride;
            for (wi, &word) in self.scratch_desc[block..block + stride].iter().enumerate() {
                let mut bits = word;
                while bits != 0 {
                    let zx = wi * WORD + bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    let (w, m) = self.anc_bit(zx, zl, x, j);
                    if self.anc[w] & m != 0 {
                        continue;
                    }
                    let row = self.anc_row(zx, zl);
                    for (dst, src) in self.anc[row..row + anc_len]
                        .iter_mut()
                        .zip(&self.scratch_anc)
                    {
                        *dst |= *src;
                    }
                }
            }
        }
    }
}

/// Incremental `d* <= 2k-1` oracle for one vertex subset.
#[derive(Clone, Debug)]
pub struct IncrementalReachability {
    vertices: Vec<usize>,
    k: usize,
    closure: LayeredClosure,
}

impl IncrementalReachability {
    /// Fresh structure over `vertices` (deduplicated and sorted here).
    pub fn new_layered(vertices: impl IntoIterator<Item = usize>, k: usize) -> Self {
        assert!(k >= 1, "stretch parameter k must be at least 1");
        let mut vertices: Vec<usize> = vertices.into_iter().collect();
        vertices.sort_unstable();
        vertices.dedup();
        Self::with_vertices(vertices, k)
    }

    pub fn layered_node_count(&self) -> usize {
        self.vertices.len() * 2 * self.k
    }

    pub fn closure(&self) -> &LayeredClosure {
        &self.closure
    }
}

impl HopReachability for IncrementalReachability {
    fn with_vertices(vertices: Vec<usize>, k: usize) -> Self {
        assert!(k >= 1, "stretch parameter k must be at least 1");
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        let mut closure = LayeredClosure::new(vertices.len(), 2 * k);
        for x in 0..vertices.len() {
            for j in 0..2 * k - 1 {
                closure.insert_arc(x, j, x, j + 1);
            }
        }
        Self {
            vertices,
            k,
            closure,
        }
    }

    fn base_vertices(&self) -> &[usize] {
        &self.vertices
    }

    fn k(&self) -> usize {
        self.k
    }

    fn insert_local(&mut self, a: usize, b: usize) {
        debug_assert_ne!(a, b);
        for j in 0..2 * self.k - 1 {
            self.closure.insert_arc(a, j, b, j + 1);
            self.closure.insert_arc(b, j, a, j + 1);
        }
    }

    #[inline]
    fn reachable_local(&self, a: usize, b: usize) -> bool {
        self.closure.reaches(a, 0, b, 2 * self.k - 1)
    }

    fn storage_words(&self) -> usize {
        self.closure.storage_words()
    }
}

/// Fallback backend: stores the subgraph and answers each query with a
/// breadth-first search truncated at `2k - 1` hops.
#[derive(Clone, Debug)]
pub struct RecomputeReachability {
    vertices: Vec<usize>,
    k: usize,
    adjacency: Vec<Vec<usize>>,
}

impl HopReachability for RecomputeReachability {
    fn with_vertices(vertices: Vec<usize>, k: usize) -> Self {
        assert!(k >= 1, "stretch parameter k must be at least 1");
        let adjacency = vec![Vec::new(); vertices.len()];
        Self {
            vertices,
            k,
            adjacency,
        }
    }

    fn base_vertices(&self) -> &[usize] {
        &self.vertices
    }

    fn k(&self) -> usize {
        self.k
    }

    fn insert_local(&mut self, a: usize, b: usize) {
        if !self.adjacency[a].contains(&b) {
            self.adjacency[a].push(b);
            self.adjacency[b].push(a);
        }
    }

    fn reachable_local(&self, a: usize, b: usize) -> bool {
        if a == b {
            return true;
        }
        let limit = 2 * self.k - 1;
        let mut hops = vec![usize::MAX; self.vertices.len()];
        let mut queue = VecDeque::from([a]);
        hops[a] = 0;
        while let Some(x) = queue.pop_front() {
            if hops[x] == limit {
                continue;
            }
            for &y in &self.adjacency[x] {
                if hops[y] == usize::MAX {
                    if y == b {
                        return true;
                    }
                    hops[y] = hops[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fresh_two_vertices() {
        let r = IncrementalReachability::new_layered([3, 7], 1);
        assert_eq!(r.layered_node_count(), 4);
        assert_eq!(r.reachable(3, 3), Ok(true));
        assert_eq!(r.reachable(3, 7), Ok(false));
        assert_eq!(r.reachable(7, 3), Ok(false));
    }

    #[test]
    fn single_vertex_chain() {
        for k in 1..5 {
            let r = IncrementalReachability::new_layered([5], k);
            assert_eq!(r.reachable(5, 5), Ok(true));
        }
    }

    #[test]
    fn fresh_structure_has_no_cross_reachability() {
        let r = IncrementalReachability::new_layered(0..6, 3);
        for u in 0..6 {
            for v in 0..6 {
                assert_eq!(r.reachable(u, v).unwrap(), u == v);
            }
        }
    }

    #[test]
    fn single_edge_reachable() {
        let mut r = IncrementalReachability::new_layered([0, 1, 2], 2);
        r.insert_spanner_edge(0, 1).unwrap();
        assert!(r.reachable(0, 1).unwrap());
        assert!(r.reachable(1, 0).unwrap());
        assert!(!r.reachable(0, 2).unwrap());
    }

    #[test]
    fn two_hop_path_needs_k_two() {
        let mut r = IncrementalReachability::new_layered([0, 1, 2], 1);
        r.insert_spanner_edge(0, 1).unwrap();
        r.insert_spanner_edge(1, 2).unwrap();
        assert!(!r.reachable(0, 2).unwrap());

        let mut r = IncrementalReachability::new_layered([0, 1, 2], 2);
        r.insert_spanner_edge(0, 1).unwrap();
        r.insert_spanner_edge(1, 2).unwrap();
        assert!(r.reachable(0, 2).unwrap());
    }

    #[test]
    fn errors_for_foreign_vertices() {
        let mut r = IncrementalReachability::new_layered([0, 2], 1);
        assert_eq!(
            r.insert_spanner_edge(0, 1),
            Err(ReachabilityError::NotABaseVertex(1))
        );
        assert_eq!(r.reachable(4, 0), Err(ReachabilityError::NotABaseVertex(4)));
        assert_eq!(
            r.insert_spanner_edge(2, 2),
            Err(ReachabilityError::SelfLoop(2))
        );
    }

    #[test]
    fn empty_structure() {
        let r = IncrementalReachability::new_layered(std::iter::empty(), 2);
        assert_eq!(r.layered_node_count(), 0);
        assert_eq!(r.reachable(0, 0), Err(ReachabilityError::NotABaseVertex(0)));
    }

    #[test]
    fn closure_matches_dfs_on_wide_layers() {
        // more than 64 nodes per layer exercises multi-word blocks
        let width = 130;
        let layers = 4;
        let mut c = LayeredClosure::new(width, layers);
        let mut arcs = Vec::new();
        let mut state = 12345u64;
        for _ in 0..300 {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let x = (state >> 33) as usize % width;
            let y = (state >> 17) as usize % width;
            let j = (state >> 50) as usize % (layers - 1);
            c.insert_arc(x, j, y, j + 1);
            arcs.push(((x, j), (y, j + 1)));
        }
        let idx = |x: usize, j: usize| j * width + x;
        let mut adj = vec![Vec::new(); width * layers];
        for ((x, j), (y, l)) in arcs {
            adj[idx(x, j)].push(idx(y, l));
        }
        for src in (0..width * layers).step_by(7) {
            let mut seen = vec![false; width * layers];
            let mut stack = vec![src];
            seen[src] = true;
            while let Some(a) = stack.pop() {
                for &b in &adj[a] {
                    if !seen[b] {
                        seen[b] = true;
                        stack.push(b);
                    }
                }
            }
            let (x, j) = (src % width, src / width);
            for dst in 0..width * layers {
                let (y, l) = (dst % width, dst / width);
                assert_eq!(c.reaches(x, j, y, l), seen[dst], "{src} -> {dst}");
            }
        }
    }
}
