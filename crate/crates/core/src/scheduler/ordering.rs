use std::cmp::Reverse;
use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::graph::{edge_volume, Graph};

/// Key used to rank edges before partitioning.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum OrderingKey {
    /// Largest `d_v + d_u` first.
    #[default]
    Degree,
    /// Largest edge-neighborhood volume first.
    Volume,
    /// Seeded uniform shuffle.
    Random,
    DegreeReversed,
    VolumeReversed,
}

impl OrderingKey {
    pub const ALL: [OrderingKey; 5] = [
        OrderingKey::Degree,
        OrderingKey::Volume,
        OrderingKey::Random,
        OrderingKey::DegreeReversed,
        OrderingKey::VolumeReversed,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            OrderingKey::Degree => "degree",
            OrderingKey::Volume => "volume",
            OrderingKey::Random => "rand",
            OrderingKey::DegreeReversed => "degree-rev",
            OrderingKey::VolumeReversed => "volume-rev",
        }
    }
}

impl fmt::Display for OrderingKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for OrderingKey {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        OrderingKey::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .or(match s {
                "random" => Some(OrderingKey::Random),
                _ => None,
            })
            .ok_or_else(|| format!("unknown ordering {s:?} (expected degree, volume, rand, degree-rev, volume-rev)"))
    }
}

/// A permutation of edge ids, hardest edges first for the descending keys.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeOrdering {
    pub key: OrderingKey,
    pub permutation: Vec<usize>,
}

/// Ranks the edges of `g`. Ties are broken by ascending edge id; `seed` is
/// used only by [`OrderingKey::Random`].
pub fn order_edges(g: &Graph, key: OrderingKey, seed: u64) -> EdgeOrdering {
    let mut permutation: Vec<usize> = (0..g.m()).collect();
    let degree_sum = |k: usize| {
        let e = g.edge(k);
        g.degree(e.v) as u64 + g.degree(e.u) as u64
    };
    match key {
        OrderingKey::Degree => permutation.sort_by_key(|&k| (Reverse(degree_sum(k)), k)),
        OrderingKey::DegreeReversed => permutation.sort_by_key(|&k| (degree_sum(k), k)),
        OrderingKey::Volume | OrderingKey::VolumeReversed => {
            let vol: Vec<u64> = g.edges().iter().map(|&e| edge_volume(g, e)).collect();
            if key == OrderingKey::Volume {
                permutation.sort_by_key(|&k| (Reverse(vol[k]), k));
            } else {
                permutation.sort_by_key(|&k| (vol[k], k));
            }
        }
        OrderingKey::Random => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            permutation.shuffle(&mut rng);
        }
    }
    EdgeOrdering { key, permutation }
}

/// Position ranges into an [`EdgeOrdering`]: the initial CPU segment, the
/// shared middle, and the initial GPU segment. Together they cover `0..m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    pub cpu_front: Range<usize>,
    pub middle: Range<usize>,
    pub gpu_back: Range<usize>,
}

/// `⌊fraction · m⌋`, tolerant of binary rounding (`0.29 · 100` is 29).
pub(crate) fn fraction_of(fraction: f64, m: usize) -> usize {
    let x = fraction * m as f64;
    let r = x.round();
    let k = if (x - r).abs() <= 1e-9 * (m.max(1) as f64) { r } else { x.floor() };
    (k.max(0.0) as usize).min(m)
}

/// Splits `m` ordered edges into front / middle / back by `alpha` and `gamma`.
pub fn partition(m: usize, alpha: f64, gamma: f64) -> Partition {
    let front = fraction_of(alpha, m);
    let back = fraction_of(gamma, m).min(m - front);
    Partition { cpu_front: 0..front, middle: front..m - back, gpu_back: m - back..m }
}

/// Deals `segment` to `pools` queues: queue `i` gets positions `≡ i (mod pools)`.
pub fn split_gpu_round_robin<T: Copy>(segment: &[T], pools: usize) -> Vec<Vec<T>> {
    assert!(pools >= 1, "need at least one pool");
    let mut out = vec![Vec::with_capacity(segment.len() / pools + 1); pools];
    for (i, &x) in segment.iter().enumerate() {
        out[i % pools].push(x);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{path, ring, star};

    #[test]
    fn star_ties_follow_edge_id() {
        let g = star(3);
        for key in [OrderingKey::Degree, OrderingKey::DegreeReversed, OrderingKey::Volume] {
            assert_eq!(order_edges(&g, key, 0).permutation, vec![0, 1, 2]);
        }
    }

    #[test]
    fn path_middle_edge_first() {
        let g = path(4);
        let ord = order_edges(&g, OrderingKey::Degree, 0).permutation;
        let first = g.edge(ord[0]);
        assert_eq!(g.degree(first.v) + g.degree(first.u), 4);
        let last = g.edge(*ord.last().unwrap());
        assert_eq!(g.degree(last.v) + g.degree(last.u), 3);
        let rev = order_edges(&g, OrderingKey::DegreeReversed, 0).permutation;
        assert_eq!(rev[2], ord[0]);
    }

    #[test]
    fn c4_volume_ties() {
        let g = ring(4);
        for &e in g.edges() {
            assert_eq!(edge_volume(&g, e), 4);
        }
        assert_eq!(order_edges(&g, OrderingKey::Volume, 0).permutation, vec![0, 1, 2, 3]);
    }

    #[test]
    fn random_is_reproducible_permutation() {
        let g = ring(50);
        let a = order_edges(&g, OrderingKey::Random, 3).permutation;
        assert_eq!(a, order_edges(&g, OrderingKey::Random, 3).permutation);
        assert_ne!(a, order_edges(&g, OrderingKey::Random, 4).permutation);
        let mut sorted = a.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, (0..50).collect::<Vec<_>>());
    }

    #[test]
    fn partition_sizes() {
        let p = partition(100, 0.05, 0.80);
        assert_eq!((p.cpu_front.len(), p.middle.len(), p.gpu_back.len()), (5, 15, 80));
        let p = partition(100, 0.0, 0.0);
        assert_eq!(p.middle, 0..100);
        let p = partition(100, 1.0, 0.0);
        assert_eq!((p.cpu_front.len(), p.middle.len(), p.gpu_back.len()), (100, 0, 0));
        assert_eq!(partition(100, 0.29, 0.0).cpu_front.len(), 29);
        assert_eq!(partition(0, 0.5, 0.5).middle, 0..0);
    }

    #[test]
    fn round_robin() {
        let q = split_gpu_round_robin(&[0, 1, 2, 3, 4], 2);
        assert_eq!(q, vec![vec![0, 2, 4], vec![1, 3]]);
        assert_eq!(split_gpu_round_robin(&[7, 8, 9], 1), vec![vec![7, 8, 9]]);
        let q = split_gpu_round_robin(&(0..8).collect::<Vec<_>>(), 4);
        assert_eq!(q, vec![vec![0, 4], vec![1, 5], vec![2, 6], vec![3, 7]]);
    }

    #[test]
    fn key_parsing() {
        for k in OrderingKey::ALL {
            assert_eq!(k.as_str().parse::<OrderingKey>().unwrap(), k);
        }
        assert!("sideways".parse::<OrderingKey>().is_err());
    }
}
