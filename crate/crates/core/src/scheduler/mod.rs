//! Hybrid CPU-class / GPU-class edge scheduler.
//!
//! Edges are ranked by an [`EdgeOrdering`] and cut into three segments: a
//! front for the CPU pool, a back dealt round-robin to the GPU pools, and a
//! shared middle that CPU workers drain from the front and GPU workers from
//! the back. Once the middle is empty, idle workers steal split sub-tasks and
//! then whole edges.
//!
//! CPU-class workers run the stamp-table pipeline, GPU-class workers the
//! binary-search pipeline. Split sub-tasks always use the search kernels.

mod deque;
mod engine;
mod ordering;
mod stats;

pub use deque::MiddleDeque;
pub use engine::{run, run_sequential, RunOutput};
pub use ordering::{order_edges, partition, split_gpu_round_robin, EdgeOrdering, OrderingKey, Partition};
pub use stats::{
    work_distribution, work_report, HistogramBin, PoolId, PoolWork, RefillEvent, RefillSide, RunStats, WorkReport,
    WorkerSummary,
};

use crate::error::ConfigError;

#[derive(Debug, Clone, PartialEq)]
pub struct SchedulerConfig {
    pub cpu_workers: usize,
    pub gpu_pools: usize,
    pub gpu_workers_per_pool: usize,
    /// Fraction of the ordering initially given to the CPU pool.
    pub alpha: f64,
    /// Fraction of the ordering initially dealt to the GPU pools.
    pub gamma: f64,
    pub b_cpu: usize,
    pub b_gpu: usize,
    /// `|T|` or cycle-side size at which a stage is split into sub-tasks.
    pub split_threshold: usize,
    pub ordering: OrderingKey,
    pub seed: u64,
}

impl Default for SchedulerConfig {
    fn default() -> Self {
        Self {
            cpu_workers: 4,
            gpu_pools: 2,
            gpu_workers_per_pool: 2,
            alpha: 0.05,
            gamma: 0.80,
            b_cpu: 1,
            b_gpu: 64,
            split_threshold: 1024,
            ordering: OrderingKey::Degree,
            seed: 0,
        }
    }
}

impl SchedulerConfig {
    /// One CPU worker owning every edge.
    pub fn single_threaded() -> Self {
        Self { cpu_workers: 1, gpu_pools: 0, alpha: 1.0, gamma: 0.0, ..Self::default() }
    }

    /// `cpu` CPU workers and `pools` GPU pools with the default fractions.
    pub fn mixed(cpu: usize, pools: usize) -> Self {
        Self { cpu_workers: cpu, gpu_pools: pools, ..Self::default() }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let ok = |x: f64| x.is_finite() && (0.0..=1.0).contains(&x);
        if !ok(self.alpha) || !ok(self.gamma) || self.effective_alpha() + self.effective_gamma() > 1.0 + 1e-12 {
            return Err(ConfigError::Fractions { alpha: self.alpha, gamma: self.gamma });
        }
        if self.b_cpu == 0 || self.b_gpu == 0 {
            return Err(ConfigError::Chunk);
        }
        if self.split_threshold == 0 {
            return Err(ConfigError::SplitThreshold);
        }
        if self.gpu_pools > 0 && self.gpu_workers_per_pool == 0 {
            return Err(ConfigError::EmptyPool);
        }
        if self.total_workers() == 0 {
            return Err(ConfigError::NoWorkers);
        }
        Ok(())
    }

    pub fn total_workers(&self) -> usize {
        self.cpu_workers + self.gpu_pools * self.gpu_workers_per_pool
    }

    /// `alpha` as applied: zero when there is no CPU worker.
    pub fn effective_alpha(&self) -> f64 {
        if self.cpu_workers == 0 {
            0.0
        } else {
            self.alpha
        }
    }

    /// `gamma` as applied: zero when there is no GPU pool.
    pub fn effective_gamma(&self) -> f64 {
        if self.gpu_pools == 0 {
            0.0
        } else {
            self.gamma
        }
    }
}
