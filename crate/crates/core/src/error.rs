use thiserror::Error;

/// Every failure the library reports.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {v} out of range (n = {n})")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("edge ({0}, {1}) already present")]
    DuplicateEdge(usize, usize),
    #[error("edge ({0}, {1}) not present")]
    MissingEdge(usize, usize),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("could not break shortest-path ties after {0} attempts")]
    TieUnbreakable(u32),
    #[error("tie detected between equal-weight shortest paths")]
    TieDetected,
    #[error("weights too large: composite sums may overflow")]
    Overflow,
    #[error("interval [{a}, {b}] is not on a path with {hops} edges")]
    IntervalNotOnPath { a: usize, b: usize, hops: usize },
    #[error("timestep {t} out of range (T = {len})")]
    TimeOutOfRange { t: usize, len: usize },
    #[error("invalid delete of ({0}, {1}) at update {2}")]
    InvalidDelete(usize, usize, usize),
    #[error("{0} and {1} are not connected")]
    Disconnected(usize, usize),
    #[error("intervals overlap")]
    DisjointnessViolated,
    #[error("not a path: consecutive vertices {0} and {1} are not adjacent")]
    NotAPath(usize, usize),
    #[error("inconsistent answer: {0}")]
    InconsistentAnswer(String),
    #[error("snapshot: {0}")]
    Snapshot(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
