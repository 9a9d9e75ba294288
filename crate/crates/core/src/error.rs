use thiserror::Error;

use crate::key::Key;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown semiring `{name}` (valid: {})", valid.join(", "))]
    UnknownSemiring { name: String, valid: Vec<String> },

    #[error("invalid value `{value}`: {reason}")]
    InvalidValue { value: String, reason: String },

    #[error("operands are defined over different semirings ({left} vs {right})")]
    SemiringMismatch { left: String, right: String },

    #[error("key sets differ: {0}")]
    KeyMismatch(String),

    #[error("entry ({row}, {col}) lies outside the array's key sets")]
    KeyOutOfDomain { row: Key, col: Key },

    #[error("arrays are not conformable: {0}")]
    Conformability(String),

    #[error("partition count must be at least 1 (got {0})")]
    InvalidPartitionCount(usize),

    #[error("cannot reduce an empty list of parts")]
    EmptyPartition,

    #[error("traffic mode `{mode}` requires a {expected} partition, found {found}")]
    ModeStrategyMismatch {
        mode: String,
        expected: String,
        found: String,
    },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("edge ({src}, {dst}) has weight {weight}; weights must lie in (0, inf)")]
    NonPositiveWeight { src: Key, dst: Key, weight: String },

    #[error("duplicate edge ({src}, {dst})")]
    DuplicateEdge { src: Key, dst: Key },

    #[error("graph factorization out-incidence * weights * in-incidence^T does not reproduce the adjacency array")]
    FactorizationMismatch,

    #[error("path set would exceed the guard of {guard} paths while combining {left} with {right}")]
    PathCapacity {
        guard: usize,
        left: String,
        right: String,
    },

    #[error("enumerating {required} vertex sequences exceeds the budget of {budget}")]
    EnumerationBudget { required: u128, budget: u128 },

    #[error("hop count must be at least 1")]
    InvalidHops,

    #[error("unknown vertex `{0}`")]
    UnknownVertex(Key),

    #[error("product recovery forms disagree at ({row}, {col})")]
    RecoveryMismatch { row: Key, col: Key },

    #[error("event timestamp {timestamp} precedes {previous} (event {src} -> {dst}, count {count})")]
    OutOfOrder {
        src: Key,
        dst: Key,
        count: String,
        timestamp: f64,
        previous: f64,
    },

    #[error("invalid stream configuration: {0}")]
    InvalidConfig(String),

    #[error("level {level} does not exist (hierarchy has {levels} levels)")]
    UnknownLevel { level: usize, levels: usize },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
