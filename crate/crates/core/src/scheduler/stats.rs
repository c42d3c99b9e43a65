use std::fmt;
use std::ops::Range;
use std::time::Duration;

use super::ordering::Partition;

/// Pool class that processed an edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PoolId {
    Cpu,
    Gpu(usize),
}

impl PoolId {
    pub fn is_cpu(self) -> bool {
        matches!(self, PoolId::Cpu)
    }
}

impl fmt::Display for PoolId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PoolId::Cpu => f.write_str("cpu"),
            PoolId::Gpu(i) => write!(f, "gpu{i}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RefillSide {
    Front,
    Back,
}

/// One chunk removed from the middle deque.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RefillEvent {
    pub worker: usize,
    pub pool: PoolId,
    pub side: RefillSide,
    /// Positions in the edge ordering.
    pub positions: Range<usize>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct WorkerSummary {
    pub worker: usize,
    pub pool: Option<PoolId>,
    /// Whole edges this worker owned.
    pub edges: usize,
    pub subtasks: usize,
    pub work_units: u64,
    pub busy: Duration,
    pub refills: usize,
    /// Edges owned by this worker whose stages were split.
    pub splits: usize,
    pub local_steals: usize,
    pub cross_steals: usize,
}

#[derive(Debug, Clone)]
pub struct RunStats {
    pub partition: Partition,
    /// Indexed by edge id; includes the work of split sub-tasks.
    pub per_edge_work: Vec<u64>,
    /// Indexed by edge id.
    pub pool_assignment: Vec<PoolId>,
    pub workers: Vec<WorkerSummary>,
    pub refills: Vec<RefillEvent>,
    /// Edges whose clique or cycle stage was split into sub-tasks.
    pub split_edges: usize,
    pub wall_time: Duration,
}

impl RunStats {
    pub fn per_worker_edges(&self) -> Vec<usize> {
        self.workers.iter().map(|w| w.edges).collect()
    }

    /// Summed busy time of the workers in `pool`.
    pub fn busy_time(&self, pool: PoolId) -> Duration {
        self.workers.iter().filter(|w| w.pool == Some(pool)).map(|w| w.busy).sum()
    }

    pub fn cpu_time(&self) -> Duration {
        self.busy_time(PoolId::Cpu)
    }

    pub fn gpu_time(&self) -> Duration {
        self.workers.iter().filter(|w| matches!(w.pool, Some(PoolId::Gpu(_)))).map(|w| w.busy).sum()
    }

    /// Checks the refill log: front takes grow upward from the middle's
    /// start, back takes grow downward from its end, and together they
    /// tile the middle segment.
    pub fn refills_consistent(&self, b_cpu: usize, b_gpu: usize) -> bool {
        let mut front: Vec<_> = self.refills.iter().filter(|r| r.side == RefillSide::Front).collect();
        let mut back: Vec<_> = self.refills.iter().filter(|r| r.side == RefillSide::Back).collect();
        if front.iter().any(|r| !r.pool.is_cpu() || r.positions.len() > b_cpu)
            || back.iter().any(|r| r.pool.is_cpu() || r.positions.len() > b_gpu)
        {
            return false;
        }
        front.sort_by_key(|r| r.positions.start);
        back.sort_by_key(|r| std::cmp::Reverse(r.positions.end));
        let mid = &self.partition.middle;
        let mut at = mid.start;
        for r in &front {
            if r.positions.start != at {
                return false;
            }
            at = r.positions.end;
        }
        let mut end = mid.end;
        for r in &back {
            if r.positions.end != end {
                return false;
            }
            end = r.positions.start;
        }
        at == end
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HistogramBin {
    /// Inclusive.
    pub lo: u64,
    /// Exclusive.
    pub hi: u64,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PoolWork {
    pub pool: PoolId,
    pub edges: usize,
    pub work_units: u64,
    pub busy: Duration,
}

/// Summary of a per-edge work distribution.
#[derive(Debug, Clone, PartialEq)]
pub struct WorkReport {
    pub edges: usize,
    pub total: u64,
    pub min: u64,
    pub median: u64,
    pub p99: u64,
    pub max: u64,
    pub max_over_median: f64,
    pub p99_over_median: f64,
    /// Power-of-two buckets `[2^k, 2^(k+1))`, plus `[0, 1)`.
    pub histogram: Vec<HistogramBin>,
    pub pools: Vec<PoolWork>,
}

/// Nearest-rank percentile of a sorted slice.
fn percentile(sorted: &[u64], q: f64) -> u64 {
    if sorted.is_empty() {
        return 0;
    }
    let rank = ((q * sorted.len() as f64).ceil() as usize).clamp(1, sorted.len());
    sorted[rank - 1]
}

fn ratio(a: u64, b: u64) -> f64 {
    match (a, b) {
        (0, 0) => 1.0,
        (_, 0) => f64::INFINITY,
        _ => a as f64 / b as f64,
    }
}

/// Distribution summary of raw per-edge work, without pool totals.
pub fn work_distribution(work: &[u64]) -> WorkReport {
    let mut sorted = work.to_vec();
    sorted.sort_unstable();
    let median = percentile(&sorted, 0.5);
    let p99 = percentile(&sorted, 0.99);
    let max = sorted.last().copied().unwrap_or(0);

    let mut histogram: Vec<HistogramBin> = Vec::new();
    for &w in &sorted {
        let (lo, hi) = if w == 0 { (0, 1) } else { let k = 63 - w.leading_zeros(); (1u64 << k, (1u64 << k).saturating_mul(2)) };
        match histogram.last_mut() {
            Some(b) if b.lo == lo => b.count += 1,
            _ => histogram.push(HistogramBin { lo, hi, count: 1 }),
        }
    }

    WorkReport {
        edges: work.len(),
        total: work.iter().sum(),
        min: sorted.first().copied().unwrap_or(0),
        median,
        p99,
        max,
        max_over_median: ratio(max, median),
        p99_over_median: ratio(p99, median),
        histogram,
        pools: Vec::new(),
    }
}

/// Work distribution of a completed run with per-pool totals.
pub fn work_report(stats: &RunStats) -> WorkReport {
    let mut report = work_distribution(&stats.per_edge_work);
    let mut pools: Vec<PoolWork> = Vec::new();
    for (&pool, &w) in stats.pool_assignment.iter().zip(&stats.per_edge_work) {
        match pools.iter_mut().find(|p| p.pool == pool) {
            Some(p) => {
                p.edges += 1;
                p.work_units += w;
            }
            None => pools.push(PoolWork { pool, edges: 1, work_units: w, busy: Duration::ZERO }),
        }
    }
    for p in &mut pools {
        p.busy = stats.busy_time(p.pool);
    }
    pools.sort_by_key(|p| p.pool);
    report.pools = pools;
    report
}

impl fmt::Display for WorkReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "edges      {}", self.edges)?;
        writeln!(f, "total      {}", self.total)?;
        writeln!(f, "min        {}", self.min)?;
        writeln!(f, "median     {}", self.median)?;
        writeln!(f, "p99        {}", self.p99)?;
        writeln!(f, "max        {}", self.max)?;
        writeln!(f, "max/median {:.3}", self.max_over_median)?;
        writeln!(f, "p99/median {:.3}", self.p99_over_median)?;
        writeln!(f, "histogram")?;
        for b in &self.histogram {
            writeln!(f, "  [{}, {}) {}", b.lo, b.hi, b.count)?;
        }
        for p in &self.pools {
            writeln!(f, "pool {} edges={} work={} busy={:?}", p.pool, p.edges, p.work_units, p.busy)?;
        }
        Ok(())
    }
}
