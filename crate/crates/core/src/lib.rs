//! Finite-domain propagation for the Spacing family of sequence constraints,
//! with rhythm-generation models, SAT-derived stress instances and a
//! benchmark harness.

pub mod bench;
pub mod bitset;
pub mod checks;
pub mod domain;
pub mod engine;
pub mod oracle;
pub mod params;
pub mod propagators;
pub mod rhythm;
pub mod rng;
pub mod sat;
pub mod search;
pub mod store;

pub use domain::{Domain, DomainError, Value, DUMMY};
pub use engine::{Engine, Priority, Propagator};
pub use search::{search, search_filtered, Heuristic, Limits, SearchOutcome, ValueOrder, VarOrder, Verdict};
pub use store::{Change, Failure, Mark, PropResult, Store};
