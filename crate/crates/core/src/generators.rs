//! Deterministic graph families and seeded random generators.
//!
//! All generators label vertices `0..n` and keep isolated vertices.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::Graph;

/// `G(n, p)`: each of the `C(n, 2)` pairs is an edge with probability `p`.
pub fn erdos_renyi(n: u64, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(p.clamp(0.0, 1.0)) {
                edges.push((a, b));
            }
        }
    }
    Graph::from_edges(n, edges)
}

/// Preferential attachment: a clique on `attach + 1` seed vertices, then each
/// new vertex links to `attach` distinct existing vertices chosen with
/// probability proportional to degree.
pub fn barabasi_albert(n: u64, attach: u64, seed: u64) -> Graph {
    let attach = attach.max(1);
    let core = (attach + 1).min(n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    // Every edge endpoint once: sampling uniformly from it is degree-proportional.
    let mut endpoints: Vec<u64> = Vec::new();
    for a in 0..core {
        for b in a + 1..core {
            edges.push((a, b));
            endpoints.extend([a, b]);
        }
    }
    let mut targets: Vec<u64> = Vec::with_capacity(attach as usize);
    for new in core..n {
        targets.clear();
        while (targets.len() as u64) < attach {
            let t = endpoints[rng.gen_range(0..endpoints.len())];
            if !targets.contains(&t) {
                targets.push(t);
            }
        }
        for &t in &targets {
            edges.push((t, new));
            endpoints.extend([t, new]);
        }
    }
    Graph::from_edges(n, edges)
}

/// Cycle `C_n` (for `n >= 3`).
pub fn ring(n: u64) -> Graph {
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
}

pub fn path(n: u64) -> Graph {
    Graph::from_edges(n, (1..n).map(|i| (i - 1, i)))
}

/// `K_{1,leaves}` with center `0`.
pub fn star(leaves: u64) -> Graph {
    Graph::from_edges(leaves + 1, (1..=leaves).map(|i| (0, i)))
}

pub fn complete(n: u64) -> Graph {
    Graph::from_edges(n, (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))))
}

pub fn empty(n: u64) -> Graph {
    Graph::from_edges(n, [])
}
