//! Brute-force census by explicit subset enumeration.
//!
//! Shares nothing with the edge kernels beyond the [`Graph`] container: it
//! builds its own adjacency matrix, enumerates every 2-, 3- and 4-subset and
//! classifies each by edge count and degree sequence.

use std::collections::BTreeSet;

use crate::counts::GraphletVector;
use crate::error::OracleError;
use crate::graph::{Graph, OrientedEdge, VertexId};

/// Enumerated global counts.
pub type CensusVector = GraphletVector<u128>;

pub const DEFAULT_CAP: usize = 64;

struct Adjacency {
    n: usize,
    bits: Vec<bool>,
}

impl Adjacency {
    fn new(g: &Graph) -> Self {
        let n = g.n();
        let mut bits = vec![false; n * n];
        for e in g.edges() {
            let (a, b) = (e.v as usize, e.u as usize);
            bits[a * n + b] = true;
            bits[b * n + a] = true;
        }
        Self { n, bits }
    }

    #[inline]
    fn adj(&self, a: usize, b: usize) -> bool {
        self.bits[a * self.n + b]
    }
}

/// Class index in `7..=17` of the subgraph induced by four distinct vertices.
pub fn classify_four(g: &Graph, quad: [VertexId; 4]) -> Result<usize, OracleError> {
    let set: BTreeSet<_> = quad.iter().collect();
    if set.len() != 4 {
        return Err(OracleError::DuplicateVertex);
    }
    let mut degrees = [0u8; 4];
    let mut edges = 0;
    for i in 0..4 {
        for j in i + 1..4 {
            if g.has_edge(quad[i], quad[j]) {
                edges += 1;
                degrees[i] += 1;
                degrees[j] += 1;
            }
        }
    }
    Ok(class_of(edges, degrees))
}

/// `(edge count, sorted degree sequence)` determines every 4-vertex class.
fn class_of(edges: u8, mut degrees: [u8; 4]) -> usize {
    degrees.sort_unstable();
    match (edges, degrees) {
        (6, _) => 7,
        (5, _) => 8,
        (4, [1, 2, 2, 3]) => 9,
        (4, [2, 2, 2, 2]) => 10,
        (3, [1, 1, 1, 3]) => 11,
        (3, [1, 1, 2, 2]) => 12,
        (3, [0, 2, 2, 2]) => 13,
        (2, [1, 1, 1, 1]) => 14,
        (2, [0, 1, 1, 2]) => 15,
        (1, _) => 16,
        (0, _) => 17,
        other => unreachable!("impossible 4-vertex graph {other:?}"),
    }
}

/// Counts every induced 2-, 3- and 4-vertex subgraph by enumeration.
pub fn brute_force_global(g: &Graph) -> Result<CensusVector, OracleError> {
    brute_force_global_capped(g, DEFAULT_CAP)
}

pub fn brute_force_global_capped(g: &Graph, cap: usize) -> Result<CensusVector, OracleError> {
    let n = g.n();
    if n > cap {
        return Err(OracleError::CapExceeded { n, cap });
    }
    let adj = Adjacency::new(g);
    let mut x = [0u128; 17];

    for a in 0..n {
        for b in a + 1..n {
            let ab = adj.adj(a, b) as u8;
            x[if ab == 1 { 0 } else { 1 }] += 1;
            for c in b + 1..n {
                let (ac, bc) = (adj.adj(a, c) as u8, adj.adj(b, c) as u8);
                let e3 = ab + ac + bc;
                x[match e3 {
                    3 => 2,
                    2 => 3,
                    1 => 4,
                    _ => 5,
                }] += 1;
                for d in c + 1..n {
                    let (ad, bd, cd) = (adj.adj(a, d) as u8, adj.adj(b, d) as u8, adj.adj(c, d) as u8);
                    let degrees = [ab + ac + ad, ab + bc + bd, ac + bc + cd, ad + bd + cd];
                    x[class_of(e3 + ad + bd + cd, degrees) - 1] += 1;
                }
            }
        }
    }
    Ok(GraphletVector::from_array(x))
}

/// Per-edge quantities by direct set arithmetic.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EdgeCensus {
    pub x3: u64,
    pub x7: u64,
    pub x10: u64,
    pub t: u64,
    pub s_u: u64,
    pub s_v: u64,
}

pub fn brute_force_edge(g: &Graph, e: OrientedEdge) -> EdgeCensus {
    let nu: BTreeSet<VertexId> = g.neighbors(e.u).iter().copied().filter(|&w| w != e.v).collect();
    let nv: BTreeSet<VertexId> = g.neighbors(e.v).iter().copied().filter(|&w| w != e.u).collect();
    let t: Vec<_> = nu.intersection(&nv).copied().collect();
    let s_u: Vec<_> = nu.difference(&nv).copied().collect();
    let s_v: Vec<_> = nv.difference(&nu).copied().collect();

    let mut x7 = 0;
    for (i, &a) in t.iter().enumerate() {
        for &b in &t[i + 1..] {
            x7 += g.has_edge(a, b) as u64;
        }
    }
    let mut x10 = 0;
    for &a in &s_u {
        for &b in &s_v {
            x10 += g.has_edge(a, b) as u64;
        }
    }
    EdgeCensus { x3: t.len() as u64, x7, x10, t: t.len() as u64, s_u: s_u.len() as u64, s_v: s_v.len() as u64 }
}
