use std::ops::Range;
use std::sync::atomic::{AtomicBool, AtomicU32, AtomicUsize, Ordering};
use std::sync::{Arc, Barrier, Mutex};
use std::time::Instant;

use crossbeam_deque::{Injector, Steal, Stealer, Worker};

use super::deque::MiddleDeque;
use super::ordering::{order_edges, partition, split_gpu_round_robin};
use super::stats::{PoolId, RefillEvent, RefillSide, RunStats, WorkerSummary};
use super::SchedulerConfig;
use crate::count::Count;
use crate::counts::{accumulate_all, global_from_unrestricted, EdgeMotifRecord, GraphletVector, UnrestrictedCounts};
use crate::error::{ConfigError, CountError, SchedulerError};
use crate::graph::{Graph, VertexId};
use crate::kernels::{clique_res_range, cycle_search_range};
use crate::pipeline::{process_all, EdgePipeline, HashPipeline, PipelineKind, SearchPipeline};

#[derive(Debug, Clone)]
pub struct RunOutput<C> {
    pub counts: GraphletVector<C>,
    /// Indexed by edge id, with split sub-task contributions folded in.
    pub records: Vec<EdgeMotifRecord>,
    pub stats: RunStats,
}

enum Task {
    Edge(usize),
    Cliques { edge: usize, t: Arc<[VertexId]>, outer: Range<usize> },
    Cycles { edge: usize, iter: Arc<[VertexId]>, target: Arc<[VertexId]>, outer: Range<usize> },
}

fn pool_code(p: PoolId) -> u32 {
    match p {
        PoolId::Cpu => 1,
        PoolId::Gpu(i) => 2 + i as u32,
    }
}

fn pool_from_code(c: u32) -> Option<PoolId> {
    match c {
        0 => None,
        1 => Some(PoolId::Cpu),
        c => Some(PoolId::Gpu((c - 2) as usize)),
    }
}

fn pool_index(p: PoolId) -> usize {
    match p {
        PoolId::Cpu => 0,
        PoolId::Gpu(i) => i + 1,
    }
}

fn steal<T>(mut f: impl FnMut() -> Steal<T>) -> Option<T> {
    loop {
        match f() {
            Steal::Success(t) => return Some(t),
            Steal::Empty => return None,
            Steal::Retry => std::hint::spin_loop(),
        }
    }
}

struct Shared<'g> {
    g: &'g Graph,
    order: &'g [usize],
    middle: MiddleDeque,
    /// Index 0 is the CPU pool, `i + 1` is GPU pool `i`.
    injectors: Vec<Injector<Task>>,
    subtask_stealers: Vec<Stealer<Task>>,
    edge_stealers: Vec<Stealer<Task>>,
    claims: Vec<AtomicU32>,
    /// Edges plus outstanding sub-tasks not yet finished.
    pending: AtomicUsize,
    abort: AtomicBool,
    failure: Mutex<Option<SchedulerError>>,
    b_cpu: usize,
    b_gpu: usize,
    split_threshold: usize,
}

impl Shared<'_> {
    fn fail(&self, e: SchedulerError) {
        let mut slot = self.failure.lock().unwrap_or_else(|p| p.into_inner());
        slot.get_or_insert(e);
        self.abort.store(true, Ordering::Release);
    }
}

struct AbortOnPanic<'a>(&'a AtomicBool);

impl Drop for AbortOnPanic<'_> {
    fn drop(&mut self) {
        if std::thread::panicking() {
            self.0.store(true, Ordering::Release);
        }
    }
}

struct WorkerState<C> {
    id: usize,
    pool: PoolId,
    pipeline: Box<dyn EdgePipeline + Send>,
    subtasks: Worker<Task>,
    edges: Worker<Task>,
    same_pool: Vec<usize>,
    other_pools: Vec<usize>,
    acc: UnrestrictedCounts<C>,
    records: Vec<EdgeMotifRecord>,
    /// `(edge, x7, x10, work)` from sub-tasks.
    partials: Vec<(usize, u64, u64, u64)>,
    refills: Vec<RefillEvent>,
    summary: WorkerSummary,
}

impl<C: Count> WorkerState<C> {
    fn run_loop(&mut self, sh: &Shared<'_>) {
        while !sh.abort.load(Ordering::Acquire) {
            match self.find_task(sh) {
                Some(task) => {
                    let start = Instant::now();
                    let result = self.execute(sh, task);
                    self.summary.busy += start.elapsed();
                    sh.pending.fetch_sub(1, Ordering::AcqRel);
                    if let Err(e) = result {
                        sh.fail(e);
                    }
                }
                None if sh.pending.load(Ordering::Acquire) == 0 => break,
                None => std::thread::yield_now(),
            }
        }
    }

    fn find_task(&mut self, sh: &Shared<'_>) -> Option<Task> {
        if let Some(t) = self.subtasks.pop().or_else(|| self.edges.pop()) {
            return Some(t);
        }
        let own = pool_index(self.pool);
        if let Some(t) = steal(|| sh.injectors[own].steal()) {
            return Some(t);
        }
        if let Some(t) = self.refill(sh) {
            return Some(t);
        }

        for local in [true, false] {
            let peers = if local { &self.same_pool } else { &self.other_pools };
            if let Some(t) = peers.iter().find_map(|&w| steal(|| sh.subtask_stealers[w].steal())) {
                self.count_steal(local);
                return Some(t);
            }
        }
        for &w in &self.same_pool {
            if let Some(t) = steal(|| sh.edge_stealers[w].steal()) {
                self.summary.local_steals += 1;
                return Some(t);
            }
        }
        for (i, inj) in sh.injectors.iter().enumerate() {
            if i != own {
                if let Some(t) = steal(|| inj.steal()) {
                    self.summary.cross_steals += 1;
                    return Some(t);
                }
            }
        }
        for &w in &self.other_pools {
            if let Some(t) = steal(|| sh.edge_stealers[w].steal()) {
                self.summary.cross_steals += 1;
                return Some(t);
            }
        }
        None
    }

    fn count_steal(&mut self, local: bool) {
        if local {
            self.summary.local_steals += 1;
        } else {
            self.summary.cross_steals += 1;
        }
    }

    /// CPU workers take from the front into their own deque, GPU workers from
    /// the back into their pool's queue.
    fn refill(&mut self, sh: &Shared<'_>) -> Option<Task> {
        let (positions, side) = if self.pool.is_cpu() {
            (sh.middle.take_front(sh.b_cpu)?, RefillSide::Front)
        } else {
            (sh.middle.take_back(sh.b_gpu)?, RefillSide::Back)
        };
        self.summary.refills += 1;
        self.refills.push(RefillEvent { worker: self.id, pool: self.pool, side, positions: positions.clone() });
        let edges = positions.map(|p| Task::Edge(sh.order[p]));
        if self.pool.is_cpu() {
            edges.for_each(|t| self.edges.push(t));
            self.edges.pop()
        } else {
            let inj = &sh.injectors[pool_index(self.pool)];
            edges.for_each(|t| inj.push(t));
            steal(|| inj.steal())
        }
    }

    fn execute(&mut self, sh: &Shared<'_>, task: Task) -> Result<(), SchedulerError> {
        let g = sh.g;
        match task {
            Task::Edge(id) => self.execute_edge(sh, id),
            Task::Cliques { edge, t, outer } => {
                let mut work = 0;
                let x7 = clique_res_range(g, &t, outer, &mut work);
                self.finish_partial(edge, x7, 0, work)
            }
            Task::Cycles { edge, iter, target, outer } => {
                let mut work = 0;
                let x10 = cycle_search_range(g, &iter, &target, outer, &mut work);
                self.finish_partial(edge, 0, x10, work)
            }
        }
    }

    fn finish_partial(&mut self, edge: usize, x7: u64, x10: u64, work: u64) -> Result<(), SchedulerError> {
        self.acc.add_partial(x7, x10)?;
        self.partials.push((edge, x7, x10, work));
        self.summary.subtasks += 1;
        self.summary.work_units += work;
        Ok(())
    }

    fn execute_edge(&mut self, sh: &Shared<'_>, id: usize) -> Result<(), SchedulerError> {
        if sh.claims[id].compare_exchange(0, pool_code(self.pool), Ordering::AcqRel, Ordering::Acquire).is_err() {
            return Err(SchedulerError::DuplicateEdge(id));
        }
        let g = sh.g;
        let e = g.edge(id);
        let mut work = 0;
        let sets = self.pipeline.neighborhoods(g, e, &mut work);
        let (t, s_u, s_v) = (sets.t().len(), sets.s_u().len(), sets.s_v.len());

        let threshold = sh.split_threshold;
        let piece = threshold.div_ceil(2);
        let (iter, target) = sets.cycle_sides();
        let split_cliques = t >= threshold && t >= 2;
        let split_cycles = iter.len() >= threshold && !target.is_empty();
        let mut pieces = Vec::new();
        if split_cliques {
            let shared_t: Arc<[VertexId]> = Arc::from(sets.t());
            for start in (0..t - 1).step_by(piece) {
                pieces.push(Task::Cliques { edge: id, t: Arc::clone(&shared_t), outer: start..(start + piece).min(t - 1) });
            }
        }
        if split_cycles {
            let shared_iter: Arc<[VertexId]> = Arc::from(iter);
            let mut sorted = target.to_vec();
            sorted.sort_unstable();
            work += sorted.len() as u64;
            let shared_target: Arc<[VertexId]> = sorted.into();
            for start in (0..iter.len()).step_by(piece) {
                pieces.push(Task::Cycles {
                    edge: id,
                    iter: Arc::clone(&shared_iter),
                    target: Arc::clone(&shared_target),
                    outer: start..(start + piece).min(iter.len()),
                });
            }
        }
        if !pieces.is_empty() {
            self.summary.splits += 1;
            sh.pending.fetch_add(pieces.len(), Ordering::AcqRel);
            for p in pieces {
                self.subtasks.push(p);
            }
        }

        let x7 = if split_cliques { 0 } else { self.pipeline.cliques(g, e, &mut work) };
        let x10 = if split_cycles { 0 } else { self.pipeline.cycles(g, e, &mut work) };
        let rec = EdgeMotifRecord { edge_id: id, t: t as u64, s_u: s_u as u64, s_v: s_v as u64, x7, x10, work_units: work };
        self.acc.accumulate(&rec, g.n(), g.m())?;
        self.records.push(rec);
        self.summary.edges += 1;
        self.summary.work_units += work;
        Ok(())
    }
}

/// Counts every graphlet of `g` under the hybrid schedule described by `cfg`.
pub fn run<C: Count>(g: &Graph, cfg: &SchedulerConfig) -> Result<RunOutput<C>, SchedulerError> {
    cfg.validate()?;
    let (n, m) = (g.n(), g.m());
    if m > u32::MAX as usize {
        return Err(ConfigError::TooManyEdges(m).into());
    }
    let started = Instant::now();
    let ordering = order_edges(g, cfg.ordering, cfg.seed);
    let order = &ordering.permutation[..];
    let part = partition(m, cfg.effective_alpha(), cfg.effective_gamma());

    let injectors: Vec<Injector<Task>> = (0..=cfg.gpu_pools).map(|_| Injector::new()).collect();
    for &id in &order[part.cpu_front.clone()] {
        injectors[0].push(Task::Edge(id));
    }
    if cfg.gpu_pools > 0 {
        for (i, queue) in split_gpu_round_robin(&order[part.gpu_back.clone()], cfg.gpu_pools).into_iter().enumerate() {
            for id in queue {
                injectors[i + 1].push(Task::Edge(id));
            }
        }
    }

    let pools: Vec<PoolId> = std::iter::repeat_n(PoolId::Cpu, cfg.cpu_workers)
        .chain((0..cfg.gpu_pools).flat_map(|i| std::iter::repeat_n(PoolId::Gpu(i), cfg.gpu_workers_per_pool)))
        .collect();

    let mut states: Vec<WorkerState<C>> = Vec::with_capacity(pools.len());
    for (id, &pool) in pools.iter().enumerate() {
        let pipeline: Box<dyn EdgePipeline + Send> = match pool {
            PoolId::Cpu => Box::new(HashPipeline::new(g)),
            PoolId::Gpu(_) => Box::new(SearchPipeline::new(g)),
        };
        let (same_pool, other_pools) = (0..pools.len()).filter(|&w| w != id).partition(|&w| pools[w] == pool);
        states.push(WorkerState {
            id,
            pool,
            pipeline,
            subtasks: Worker::new_lifo(),
            edges: Worker::new_fifo(),
            same_pool,
            other_pools,
            acc: UnrestrictedCounts::zero(),
            records: Vec::new(),
            partials: Vec::new(),
            refills: Vec::new(),
            summary: WorkerSummary { worker: id, pool: Some(pool), ..WorkerSummary::default() },
        });
    }

    let shared = Shared {
        g,
        order,
        middle: MiddleDeque::new(part.middle.clone()),
        injectors,
        subtask_stealers: states.iter().map(|s| s.subtasks.stealer()).collect(),
        edge_stealers: states.iter().map(|s| s.edges.stealer()).collect(),
        claims: (0..m).map(|_| AtomicU32::new(0)).collect(),
        pending: AtomicUsize::new(m),
        abort: AtomicBool::new(false),
        failure: Mutex::new(None),
        b_cpu: cfg.b_cpu,
        b_gpu: cfg.b_gpu,
        split_threshold: cfg.split_threshold,
    };

    let sh = &shared;
    let start_line = &Barrier::new(pools.len());
    let joined: Vec<_> = std::thread::scope(|s| {
        let handles: Vec<_> = states
            .into_iter()
            .map(|mut st| {
                s.spawn(move || {
                    let _guard = AbortOnPanic(&sh.abort);
                    start_line.wait();
                    st.run_loop(sh);
                    st
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join()).collect()
    });
    let wall_time = started.elapsed();

    let mut states = Vec::with_capacity(joined.len());
    for r in joined {
        states.push(r.map_err(|_| SchedulerError::WorkerPanic)?);
    }
    if let Some(e) = shared.failure.into_inner().unwrap_or_else(|p| p.into_inner()) {
        return Err(e);
    }

    let mut acc = UnrestrictedCounts::<C>::zero();
    let mut slots: Vec<Option<EdgeMotifRecord>> = vec![None; m];
    for st in &states {
        acc.merge(&st.acc)?;
        for r in &st.records {
            if slots[r.edge_id].replace(*r).is_some() {
                return Err(SchedulerError::DuplicateEdge(r.edge_id));
            }
        }
    }
    for st in &states {
        for &(edge, x7, x10, work) in &st.partials {
            let r = slots[edge].as_mut().ok_or(SchedulerError::MissingEdge(edge))?;
            r.x7 += x7;
            r.x10 += x10;
            r.work_units += work;
        }
    }
    let records = slots
        .into_iter()
        .enumerate()
        .map(|(i, r)| r.ok_or(SchedulerError::MissingEdge(i)))
        .collect::<Result<Vec<_>, _>>()?;
    let pool_assignment = shared
        .claims
        .iter()
        .enumerate()
        .map(|(i, c)| pool_from_code(c.load(Ordering::Acquire)).ok_or(SchedulerError::MissingEdge(i)))
        .collect::<Result<Vec<_>, _>>()?;

    let counts = global_from_unrestricted(&acc, n, m)?;
    let mut refills: Vec<RefillEvent> = states.iter_mut().flat_map(|s| s.refills.drain(..)).collect();
    refills.sort_by_key(|r| r.positions.start);
    let stats = RunStats {
        partition: part,
        per_edge_work: records.iter().map(|r| r.work_units).collect(),
        pool_assignment,
        split_edges: states.iter().map(|s| s.summary.splits).sum(),
        workers: states.into_iter().map(|s| s.summary).collect(),
        refills,
        wall_time,
    };
    Ok(RunOutput { counts, records, stats })
}

/// Single-threaded reference: one pipeline over every edge in id order.
pub fn run_sequential<C: Count>(
    g: &Graph,
    kind: PipelineKind,
) -> Result<(GraphletVector<C>, Vec<EdgeMotifRecord>), CountError> {
    let records = match kind {
        PipelineKind::Hash => process_all(g, &mut HashPipeline::new(g)),
        PipelineKind::Search => process_all(g, &mut SearchPipeline::new(g)),
    };
    let acc = accumulate_all::<C>(&records, g.n(), g.m())?;
    Ok((global_from_unrestricted(&acc, g.n(), g.m())?, records))
}
