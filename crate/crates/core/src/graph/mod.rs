//! Preprocessed, immutable simple undirected graph.
//!
//! Construction cleans the input (self-loops, duplicates, direction) and
//! relabels vertices so that:
//!
//! * internal ids are sorted by non-decreasing degree (ties by original label);
//! * each adjacency list is available in two orders: by non-increasing degree
//!   (ties by ascending id) for iteration, and by ascending id for binary
//!   search;
//! * every edge is oriented as `(v, u)` with `degree(v) >= degree(u)`.
//!
//! Because ids are degree-sorted, orienting an edge reduces to `v = max(a, b)`.

mod io;

use std::collections::HashMap;

pub use io::{load_edge_list, InputFormat, RawEdges};

/// Dense internal vertex id.
pub type VertexId = u32;

/// An undirected edge `(v, u)` with `v` the higher-degree endpoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrientedEdge {
    pub v: VertexId,
    pub u: VertexId,
    pub edge_id: usize,
}

#[derive(Debug, Clone)]
pub struct Graph {
    offsets: Vec<usize>,
    by_degree: Vec<VertexId>,
    by_id: Vec<VertexId>,
    degree: Vec<u32>,
    labels: Vec<u64>,
    relabel: HashMap<u64, VertexId>,
    edges: Vec<OrientedEdge>,
    d_max: u32,
}

impl Graph {
    /// Cleans and relabels `raw`.
    ///
    /// Panics if the input has more than `u32::MAX` distinct vertices.
    pub fn build(raw: &RawEdges) -> Self {
        let mut labels: Vec<u64> = raw
            .pairs
            .iter()
            .flat_map(|&(a, b)| [a, b])
            .chain(raw.vertices.iter().copied())
            .collect();
        labels.sort_unstable();
        labels.dedup();
        assert!(labels.len() <= u32::MAX as usize, "too many vertices for 32-bit ids");
        let n = labels.len();

        let compact = |label: u64| labels.binary_search(&label).expect("label collected above") as u32;
        let mut pairs: Vec<(u32, u32)> = raw
            .pairs
            .iter()
            .filter(|(a, b)| a != b)
            .map(|&(a, b)| {
                let (a, b) = (compact(a), compact(b));
                (a.min(b), a.max(b))
            })
            .collect();
        pairs.sort_unstable();
        pairs.dedup();

        let mut compact_degree = vec![0u32; n];
        for &(a, b) in &pairs {
            compact_degree[a as usize] += 1;
            compact_degree[b as usize] += 1;
        }

        // Compact index order equals label order, so this sorts by (degree, label).
        let mut order: Vec<u32> = (0..n as u32).collect();
        order.sort_by_key(|&c| (compact_degree[c as usize], c));
        let mut internal = vec![0u32; n];
        for (id, &c) in order.iter().enumerate() {
            internal[c as usize] = id as u32;
        }

        let internal_labels: Vec<u64> = order.iter().map(|&c| labels[c as usize]).collect();
        let degree: Vec<u32> = order.iter().map(|&c| compact_degree[c as usize]).collect();

        let mut offsets = vec![0usize; n + 1];
        for (v, &d) in degree.iter().enumerate() {
            offsets[v + 1] = offsets[v] + d as usize;
        }
        let mut fill = offsets.clone();
        let mut by_id = vec![0u32; offsets[n]];
        for &(a, b) in &pairs {
            let (a, b) = (internal[a as usize], internal[b as usize]);
            by_id[fill[a as usize]] = b;
            fill[a as usize] += 1;
            by_id[fill[b as usize]] = a;
            fill[b as usize] += 1;
        }
        let mut by_degree = by_id.clone();
        for v in 0..n {
            let range = offsets[v]..offsets[v + 1];
            by_id[range.clone()].sort_unstable();
            by_degree[range].sort_unstable_by_key(|&w| (std::cmp::Reverse(degree[w as usize]), w));
        }

        let relabel = internal_labels.iter().enumerate().map(|(id, &l)| (l, id as u32)).collect();
        let d_max = degree.iter().copied().max().unwrap_or(0);

        let mut g = Graph {
            offsets,
            by_degree,
            by_id,
            degree,
            labels: internal_labels,
            relabel,
            edges: Vec::new(),
            d_max,
        };
        g.edges = orient_edges(&g);
        g
    }

    /// Graph on labels `0..n` with the given edges.
    pub fn from_edges(n: u64, edges: impl IntoIterator<Item = (u64, u64)>) -> Self {
        Self::build(&RawEdges::with_vertex_count(n, edges))
    }

    pub fn n(&self) -> usize {
        self.degree.len()
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn d_max(&self) -> u32 {
        self.d_max
    }

    #[inline]
    pub fn degree(&self, v: VertexId) -> u32 {
        self.degree[v as usize]
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degree
    }

    /// Neighbors from largest to smallest degree.
    #[inline]
    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.by_degree[self.offsets[v as usize]..self.offsets[v as usize + 1]]
    }

    /// Neighbors in ascending id order, for binary search.
    #[inline]
    pub fn neighbors_sorted(&self, v: VertexId) -> &[VertexId] {
        &self.by_id[self.offsets[v as usize]..self.offsets[v as usize + 1]]
    }

    pub fn has_edge(&self, a: VertexId, b: VertexId) -> bool {
        let (small, other) = if self.degree(a) <= self.degree(b) { (a, b) } else { (b, a) };
        self.neighbors_sorted(small).binary_search(&other).is_ok()
    }

    /// Oriented edges in ascending `(v, u)` order; `edges()[k].edge_id == k`.
    pub fn edges(&self) -> &[OrientedEdge] {
        &self.edges
    }

    pub fn edge(&self, edge_id: usize) -> OrientedEdge {
        self.edges[edge_id]
    }

    /// Original input label of an internal id.
    pub fn label(&self, v: VertexId) -> u64 {
        self.labels[v as usize]
    }

    pub fn labels(&self) -> &[u64] {
        &self.labels
    }

    pub fn internal_id(&self, label: u64) -> Option<VertexId> {
        self.relabel.get(&label).copied()
    }

    /// The complement on the same vertex set, keeping original labels.
    pub fn complement(&self) -> Graph {
        let n = self.n() as u32;
        let mut pairs = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                if !self.has_edge(a, b) {
                    pairs.push((self.label(a), self.label(b)));
                }
            }
        }
        Graph::build(&RawEdges { pairs, vertices: self.labels.clone() })
    }
}

/// Orients every edge toward its higher-degree endpoint.
pub fn orient_edges(g: &Graph) -> Vec<OrientedEdge> {
    let mut out = Vec::with_capacity(g.by_id.len() / 2);
    for v in 0..g.n() as u32 {
        // u < v implies degree(u) <= degree(v).
        for &u in g.neighbors_sorted(v).iter().take_while(|&&u| u < v) {
            out.push(OrientedEdge { v, u, edge_id: out.len() });
        }
    }
    out
}

/// Sum of degrees over the edge neighborhood `(N(u) ∪ N(v)) \ {u, v}`.
pub fn edge_volume(g: &Graph, e: OrientedEdge) -> u64 {
    let (a, b) = (g.neighbors_sorted(e.v), g.neighbors_sorted(e.u));
    let (mut i, mut j) = (0, 0);
    let mut vol = 0u64;
    while i < a.len() || j < b.len() {
        let w = match (a.get(i), b.get(j)) {
            (Some(&x), Some(&y)) if x == y => {
                i += 1;
                j += 1;
                x
            }
            (Some(&x), Some(&y)) if x < y => {
                i += 1;
                x
            }
            (Some(&x), None) => {
                i += 1;
                x
            }
            (_, Some(&y)) => {
                j += 1;
                y
            }
            (None, None) => unreachable!(),
        };
        if w != e.u && w != e.v {
            vol += g.degree(w) as u64;
        }
    }
    vol
}
