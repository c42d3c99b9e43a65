//! Exact counting of all 2-, 3- and 4-vertex graphlets, connected and
//! disconnected, by per-edge neighborhood analysis.
//!
//! ```
//! use graphlet_core::{generators, count, Graphlet};
//!
//! let g = generators::complete(5);
//! let x = count(&g).unwrap();
//! assert_eq!(*x.graphlet(Graphlet::FourClique), 5);
//! ```

mod count;
mod error;

pub mod counts;
pub mod generators;
pub mod graph;
pub mod kernels;
pub mod oracle;
pub mod pipeline;
pub mod scheduler;

pub use count::{binomial, Count};
pub use counts::{
    global_from_unrestricted, local_three_counts, micro_counts, EdgeMotifRecord, Graphlet, GraphletVector,
    MicroCounts, UnrestrictedCounts,
};
pub use error::{ConfigError, CountError, OracleError, ParseError, SchedulerError};
pub use graph::{load_edge_list, Graph, InputFormat, OrientedEdge, RawEdges, VertexId};
pub use scheduler::{run, SchedulerConfig};

/// Global counts with 128-bit accumulators.
pub type GraphletCounts = GraphletVector<u128>;
pub type GraphletCounts64 = GraphletVector<u64>;
pub type Unrestricted = UnrestrictedCounts<u128>;

/// Counts `g` with the default schedule and 128-bit accumulators.
pub fn count(g: &Graph) -> Result<GraphletCounts, SchedulerError> {
    Ok(run::<u128>(g, &SchedulerConfig::default())?.counts)
}
