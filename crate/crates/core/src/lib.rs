//! Semiring-generic hypersparse associative arrays.
//!
//! Arrays map `(row key, column key)` pairs to values of a semiring and store
//! only nonzero entries. On top of them sit sum partitions with linear
//! push-down, windowed graph streams, and the complex-index (dual) semiring
//! construction with its path-tracking and contributor-tracking instances.

pub mod array;
pub mod dnn;
pub mod dual;
pub mod error;
pub mod graph;
pub mod key;
pub mod partition;
pub mod path;
pub mod provenance;
pub mod semiring;
pub mod stream;
pub mod tsv;

pub use array::{AssocArray, KeySet};
pub use dual::{Dual, DualSemiring};
pub use error::{Error, Result};
pub use graph::GraphArrays;
pub use key::Key;
pub use partition::{partition, Strategy, SumPartition, TrafficMode, TrafficStats};
pub use path::{PathString, TropicalPathSemiring, TropicalPathValue};
pub use provenance::{ProvTuple, ProvenanceSemiring, ProvenanceSet};
pub use semiring::{axiom_check, stock_semiring, AxiomReport, Scalar, Semiring, StockSemiring};
pub use stream::{StreamConfig, StreamEngine, WindowMode, WindowedMatrix};
