//! Distributed Δ-coloring algorithms in the LOCAL model.

pub mod brooks;
pub mod detcolor;
pub mod engine;
pub mod graph;
pub mod oracle;
pub mod primitives;
pub mod randcolor;
pub mod workbench;

pub use engine::{PartialColoring, RunReport};
pub use graph::{Graph, GraphError, NodeId};
