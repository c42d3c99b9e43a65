//! Per-edge pipelines built from the kernels.
//!
//! A pipeline runs in three stages on one edge: neighborhood sets, then
//! cliques over `T`, then cycles between `S_u` and `S_v`. The scheduler may
//! skip a stage and hand its range-splittable work to other workers.

use crate::counts::EdgeMotifRecord;
use crate::graph::{Graph, OrientedEdge, VertexId};
use crate::kernels::{
    clique_hash, clique_res, cycle_hash, cycle_search_range, derive_s_v, three_graphlets_bsearch,
    three_graphlets_hash, EdgeMarks, NeighborhoodSets, StampTable,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PipelineKind {
    /// Stamp-table kernels, `O(n)` scratch.
    Hash,
    /// Binary-search kernels, `O(d_max)` scratch.
    Search,
}

/// Neighborhood sets of the edge most recently passed to
/// [`EdgePipeline::neighborhoods`].
#[derive(Debug, Clone, Default)]
pub struct EdgeSets {
    pub sets: NeighborhoodSets,
    pub s_v: Vec<VertexId>,
}

impl EdgeSets {
    pub fn t(&self) -> &[VertexId] {
        &self.sets.t
    }

    pub fn s_u(&self) -> &[VertexId] {
        &self.sets.s_u
    }

    /// The smaller of `S_u` / `S_v` (ties: `S_u`) is iterated when counting cycles.
    pub fn cycle_sides(&self) -> (&[VertexId], &[VertexId]) {
        if self.sets.s_u.len() <= self.s_v.len() {
            (&self.sets.s_u, &self.s_v)
        } else {
            (&self.s_v, &self.sets.s_u)
        }
    }
}

pub trait EdgePipeline {
    fn kind(&self) -> PipelineKind;

    fn neighborhoods(&mut self, g: &Graph, e: OrientedEdge, work: &mut u64) -> &EdgeSets;

    fn sets(&self) -> &EdgeSets;

    /// `x7` for the current edge.
    fn cliques(&mut self, g: &Graph, e: OrientedEdge, work: &mut u64) -> u64;

    /// `x10` for the current edge.
    fn cycles(&mut self, g: &Graph, e: OrientedEdge, work: &mut u64) -> u64;

    /// All three stages, unsplit.
    fn process(&mut self, g: &Graph, e: OrientedEdge) -> EdgeMotifRecord {
        let mut work = 0;
        self.neighborhoods(g, e, &mut work);
        let x7 = self.cliques(g, e, &mut work);
        let x10 = self.cycles(g, e, &mut work);
        let s = self.sets();
        EdgeMotifRecord {
            edge_id: e.edge_id,
            t: s.sets.t.len() as u64,
            s_u: s.sets.s_u.len() as u64,
            s_v: s.s_v.len() as u64,
            x7,
            x10,
            work_units: work,
        }
    }
}

/// Stamp-table pipeline used by CPU-class workers.
#[derive(Debug, Clone)]
pub struct HashPipeline {
    psi: StampTable,
    current: EdgeSets,
}

impl HashPipeline {
    pub fn new(g: &Graph) -> Self {
        Self { psi: StampTable::new(g.n()), current: EdgeSets::default() }
    }
}

impl EdgePipeline for HashPipeline {
    fn kind(&self) -> PipelineKind {
        PipelineKind::Hash
    }

    fn neighborhoods(&mut self, g: &Graph, e: OrientedEdge, work: &mut u64) -> &EdgeSets {
        three_graphlets_hash(g, &mut self.psi, e, &mut self.current.sets, work);
        // What still carries the neighbor mark is exactly S_v.
        let marks = EdgeMarks::for_edge(e.edge_id);
        self.current.s_v.clear();
        for &w in g.neighbors(e.v) {
            *work += 1;
            if self.psi.get(w) == marks.neighbor {
                self.current.s_v.push(w);
            }
        }
        &self.current
    }

    fn sets(&self) -> &EdgeSets {
        &self.current
    }

    fn cliques(&mut self, g: &Graph, e: OrientedEdge, work: &mut u64) -> u64 {
        clique_hash(g, &mut self.psi, &self.current.sets.t, EdgeMarks::for_edge(e.edge_id), work)
    }

    fn cycles(&mut self, g: &Graph, e: OrientedEdge, work: &mut u64) -> u64 {
        let marks = EdgeMarks::for_edge(e.edge_id);
        let EdgeSets { sets, s_v } = &self.current;
        if sets.s_u.len() <= s_v.len() {
            // Move the star mark from S_u onto S_v before scanning S_u.
            for &w in &sets.s_u {
                self.psi.set(w, 0);
            }
            for &w in s_v {
                self.psi.set(w, marks.star);
            }
            *work += (sets.s_u.len() + s_v.len()) as u64;
            cycle_hash(g, &mut self.psi, &sets.s_u, marks, work)
        } else {
            // S_u still carries the star mark from the neighborhood stage.
            cycle_hash(g, &mut self.psi, s_v, marks, work)
        }
    }
}

/// Binary-search pipeline used by GPU-class workers.
#[derive(Debug, Clone, Default)]
pub struct SearchPipeline {
    current: EdgeSets,
    sorted_target: Vec<VertexId>,
}

impl SearchPipeline {
    pub fn new(g: &Graph) -> Self {
        let cap = g.d_max() as usize;
        Self {
            current: EdgeSets {
                sets: NeighborhoodSets { t: Vec::with_capacity(cap), s_u: Vec::with_capacity(cap) },
                s_v: Vec::with_capacity(cap),
            },
            sorted_target: Vec::with_capacity(cap),
        }
    }
}

impl EdgePipeline for SearchPipeline {
    fn kind(&self) -> PipelineKind {
        PipelineKind::Search
    }

    fn neighborhoods(&mut self, g: &Graph, e: OrientedEdge, work: &mut u64) -> &EdgeSets {
        three_graphlets_bsearch(g, e, &mut self.current.sets, work);
        derive_s_v(g, e, &mut self.current.s_v, work);
        &self.current
    }

    fn sets(&self) -> &EdgeSets {
        &self.current
    }

    fn cliques(&mut self, g: &Graph, _e: OrientedEdge, work: &mut u64) -> u64 {
        clique_res(g, &self.current.sets.t, work)
    }

    fn cycles(&mut self, g: &Graph, _e: OrientedEdge, work: &mut u64) -> u64 {
        let (iter, target) = self.current.cycle_sides();
        self.sorted_target.clear();
        self.sorted_target.extend_from_slice(target);
        self.sorted_target.sort_unstable();
        *work += target.len() as u64;
        cycle_search_range(g, iter, &self.sorted_target, 0..iter.len(), work)
    }
}

/// Runs `pipeline` over every edge in id order.
pub fn process_all(g: &Graph, pipeline: &mut impl EdgePipeline) -> Vec<EdgeMotifRecord> {
    g.edges().iter().map(|&e| pipeline.process(g, e)).collect()
}
