//! Recognition and decomposition of bucolic graphs and triangle-square
//! complexes.

pub mod complex;
pub mod conditions;
pub mod corpus;
pub mod cover;
pub mod decompose;
pub mod error;
pub mod generators;
pub mod graph;
pub mod hulls;
pub mod iso;
pub mod mooring;
pub mod pattern;
pub mod recognition;
pub mod symmetry;

pub use conditions::{Condition, ConditionWitness};
pub use error::{CoverFailure, CoverProperty, Error, Result};
pub use graph::{Graph, Vertex};
pub use pattern::PatternKind;
