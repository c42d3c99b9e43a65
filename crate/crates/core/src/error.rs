use thiserror::Error;

/// Failure while reading an edge list.
#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Arithmetic failure in the count algebra. Any of these signals an
/// accumulation bug or an input too large for the chosen scalar.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CountError {
    #[error("count overflowed the accumulator type")]
    Overflow,
    #[error("inexact division while deriving {0}")]
    Inexact(&'static str),
    #[error("negative intermediate while deriving {0}")]
    Negative(&'static str),
    #[error("local counts need at least two vertices")]
    TooFewVertices,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("alpha and gamma must lie in [0, 1] with alpha + gamma <= 1 (got alpha={alpha}, gamma={gamma})")]
    Fractions { alpha: f64, gamma: f64 },
    #[error("chunk sizes must be at least 1")]
    Chunk,
    #[error("split threshold must be at least 1")]
    SplitThreshold,
    #[error("configuration has no workers")]
    NoWorkers,
    #[error("gpu pools need at least one worker each")]
    EmptyPool,
    #[error("graph has {0} edges; the scheduler supports at most 2^32 - 1")]
    TooManyEdges(usize),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SchedulerError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Count(#[from] CountError),
    #[error("edge {0} was processed more than once")]
    DuplicateEdge(usize),
    #[error("edge {0} was never processed")]
    MissingEdge(usize),
    #[error("worker thread panicked")]
    WorkerPanic,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("graph has {n} vertices, above the brute-force cap of {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("quad contains a repeated vertex")]
    DuplicateVertex,
}
