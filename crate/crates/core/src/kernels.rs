//! Per-edge neighborhood kernels.
//!
//! For an oriented edge `(v, u)`:
//!
//! * `T`   — vertices adjacent to both `u` and `v` (triangles);
//! * `S_u` — neighbors of `u` other than `v` not adjacent to `v`;
//! * `S_v` — neighbors of `v` other than `u` not adjacent to `u`.
//!
//! Two families compute them. The stamp-table kernels mark vertices in an
//! `O(n)` array and detect classes with one lookup; the binary-search
//! kernels need no per-worker table and probe the id-sorted adjacency
//! lists instead. Both return identical sets and counts.
//!
//! Every kernel adds the number of neighbor visits, stamp writes and
//! binary-search probes it performed to a caller-supplied work counter.

use std::ops::Range;

use crate::graph::{Graph, OrientedEdge, VertexId};

/// Per-worker vertex mark array.
///
/// Edge `k` owns the three mark values `3k+1`, `3k+2`, `3k+3`, so marks left
/// behind by earlier edges never collide and the table is never cleared.
#[derive(Debug, Clone)]
pub struct StampTable {
    stamps: Vec<u64>,
}

/// The three mark values owned by one edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EdgeMarks {
    /// Neighbor of `v`.
    pub neighbor: u64,
    /// 2-star member.
    pub star: u64,
    /// Triangle member.
    pub triangle: u64,
}

impl EdgeMarks {
    pub fn for_edge(edge_id: usize) -> Self {
        let base = 3 * edge_id as u64;
        EdgeMarks { neighbor: base + 1, star: base + 2, triangle: base + 3 }
    }
}

impl StampTable {
    pub fn new(n: usize) -> Self {
        Self { stamps: vec![0; n] }
    }

    pub fn len(&self) -> usize {
        self.stamps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.stamps.is_empty()
    }

    #[inline]
    pub fn get(&self, w: VertexId) -> u64 {
        self.stamps[w as usize]
    }

    #[inline]
    pub fn set(&mut self, w: VertexId, mark: u64) {
        self.stamps[w as usize] = mark;
    }
}

/// `T` and `S_u` for one edge, both in neighbor-iteration (degree-descending) order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct NeighborhoodSets {
    pub t: Vec<VertexId>,
    pub s_u: Vec<VertexId>,
}

impl NeighborhoodSets {
    pub fn clear(&mut self) {
        self.t.clear();
        self.s_u.clear();
    }
}

/// Binary search that charges one work unit per probe.
#[inline]
pub fn contains_counted(sorted: &[VertexId], x: VertexId, work: &mut u64) -> bool {
    let (mut lo, mut hi) = (0usize, sorted.len());
    while lo < hi {
        *work += 1;
        let mid = lo + (hi - lo) / 2;
        match sorted[mid].cmp(&x) {
            std::cmp::Ordering::Equal => return true,
            std::cmp::Ordering::Less => lo = mid + 1,
            std::cmp::Ordering::Greater => hi = mid,
        }
    }
    false
}

/// Stamp-table triangle / 2-star split.
///
/// On return `T` members carry the triangle mark, `S_u` members the star
/// mark, and the rest of `N(v) \ {u}` (that is `S_v`) the neighbor mark.
pub fn three_graphlets_hash(
    g: &Graph,
    psi: &mut StampTable,
    e: OrientedEdge,
    out: &mut NeighborhoodSets,
    work: &mut u64,
) -> u64 {
    let marks = EdgeMarks::for_edge(e.edge_id);
    out.clear();
    for &w in g.neighbors(e.v) {
        *work += 1;
        if w != e.u {
            psi.set(w, marks.neighbor);
        }
    }
    for &w in g.neighbors(e.u) {
        *work += 1;
        if w == e.v {
            continue;
        }
        if psi.get(w) == marks.neighbor {
            out.t.push(w);
            psi.set(w, marks.triangle);
        } else {
            out.s_u.push(w);
            psi.set(w, marks.star);
        }
    }
    out.t.len() as u64
}

/// Binary-search triangle / 2-star split; scratch is only `out`.
pub fn three_graphlets_bsearch(g: &Graph, e: OrientedEdge, out: &mut NeighborhoodSets, work: &mut u64) -> u64 {
    out.clear();
    for &w in g.neighbors(e.u) {
        *work += 1;
        if w == e.v {
            continue;
        }
        if contains_counted(g.neighbors_sorted(w), e.v, work) {
            out.t.push(w);
        } else {
            out.s_u.push(w);
        }
    }
    out.t.len() as u64
}

/// `S_v = N(v) \ (T ∪ {u})`, in degree-descending order.
///
/// A neighbor `w` of `v` is in `T` exactly when it is adjacent to `u`, which
/// is tested against the id-sorted list of `u`.
pub fn derive_s_v(g: &Graph, e: OrientedEdge, out: &mut Vec<VertexId>, work: &mut u64) {
    out.clear();
    let nu = g.neighbors_sorted(e.u);
    for &w in g.neighbors(e.v) {
        *work += 1;
        if w != e.u && !contains_counted(nu, w, work) {
            out.push(w);
        }
    }
}

/// Counts adjacent pairs in `T` by binary search.
pub fn clique_res(g: &Graph, t: &[VertexId], work: &mut u64) -> u64 {
    clique_res_range(g, t, 0..t.len(), work)
}

/// Pairs `(t[i], t[j])`, `i` in `outer`, `j > i`.
///
/// `t` is degree-descending, so `t[j]` never has more neighbors than `t[i]`
/// and its list is the one searched.
pub fn clique_res_range(g: &Graph, t: &[VertexId], outer: Range<usize>, work: &mut u64) -> u64 {
    let mut x7 = 0;
    for i in outer {
        for &wj in &t[i + 1..] {
            if contains_counted(g.neighbors_sorted(wj), t[i], work) {
                x7 += 1;
            }
        }
    }
    x7
}

/// Counts edges between `S_u` and `S_v` by pairwise binary search.
pub fn cycle_res(g: &Graph, s_u: &[VertexId], s_v: &[VertexId], work: &mut u64) -> u64 {
    cycle_res_range(g, s_u, s_v, 0..s_u.len(), work)
}

pub fn cycle_res_range(
    g: &Graph,
    iter: &[VertexId],
    target: &[VertexId],
    outer: Range<usize>,
    work: &mut u64,
) -> u64 {
    let mut x10 = 0;
    for &w in &iter[outer] {
        let nw = g.neighbors_sorted(w);
        for &r in target {
            if contains_counted(nw, r, work) {
                x10 += 1;
            }
        }
    }
    x10
}

/// Same count as [`cycle_res_range`], scanning `N(w)` and probing an
/// id-sorted copy of the target set. Cheaper when the target set is large.
pub fn cycle_scan_range(
    g: &Graph,
    iter: &[VertexId],
    target_sorted: &[VertexId],
    outer: Range<usize>,
    work: &mut u64,
) -> u64 {
    let mut x10 = 0;
    for &w in &iter[outer] {
        for &r in g.neighbors(w) {
            *work += 1;
            if contains_counted(target_sorted, r, work) {
                x10 += 1;
            }
        }
    }
    x10
}

/// Picks the cheaper of the pairwise and scanning cycle kernels for `outer`.
pub fn cycle_search_range(
    g: &Graph,
    iter: &[VertexId],
    target_sorted: &[VertexId],
    outer: Range<usize>,
    work: &mut u64,
) -> u64 {
    let log_target = ceil_log2(target_sorted.len() + 1);
    let (mut pairwise, mut scan) = (0u64, 0u64);
    for &w in &iter[outer.clone()] {
        let d = g.degree(w) as u64;
        pairwise += target_sorted.len() as u64 * ceil_log2(d as usize + 1);
        scan += d * (1 + log_target);
    }
    if pairwise <= scan {
        cycle_res_range(g, iter, target_sorted, outer, work)
    } else {
        cycle_scan_range(g, iter, target_sorted, outer, work)
    }
}

fn ceil_log2(x: usize) -> u64 {
    (usize::BITS - x.saturating_sub(1).leading_zeros()) as u64
}

/// Stamp-table clique count over `T`.
///
/// Expects exactly the members of `T` to carry the triangle mark. Each member
/// is cleared after its neighbors are scanned, so every adjacent pair is
/// seen once.
pub fn clique_hash(g: &Graph, psi: &mut StampTable, t: &[VertexId], marks: EdgeMarks, work: &mut u64) -> u64 {
    let mut x7 = 0;
    for &w in t {
        for &r in g.neighbors(w) {
            *work += 1;
            if psi.get(r) == marks.triangle {
                x7 += 1;
            }
        }
        psi.set(w, 0);
    }
    x7
}

/// Stamp-table cycle count: edges from `iter` into the vertices carrying the
/// star mark.
///
/// The caller arranges that the star mark sits on the opposite set
/// (`S_v` when iterating `S_u`, or vice versa) and on no member of `iter`.
pub fn cycle_hash(g: &Graph, psi: &mut StampTable, iter: &[VertexId], marks: EdgeMarks, work: &mut u64) -> u64 {
    let mut x10 = 0;
    for &w in iter {
        for &r in g.neighbors(w) {
            *work += 1;
            if psi.get(r) == marks.star {
                x10 += 1;
            }
        }
        psi.set(w, 0);
    }
    x10
}
