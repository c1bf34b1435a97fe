//! Distributed building blocks: Linial coloring, ruling sets, (deg+1)-list
//! coloring, the layering engine and a ball-carving network decomposition.

mod layering;
mod linial;
mod listcolor;
mod netdecomp;
mod ruling;

pub use layering::{layered_color, LayerDecomposition, LayeredColoring};
pub use linial::{linial_coloring, linial_schedule, LinialColoring};
pub use listcolor::{list_color, ListAssignment, ListColoring, ListStrategy};
pub use netdecomp::{network_decomposition, NetworkDecomposition};
pub use ruling::{ruling_set, verify_ruling_set, RulingMethod, RulingSet, RulingSetParams};

use thiserror::Error;

use crate::engine::EngineError;
use crate::graph::NodeId;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PrimitiveError {
    #[error("ruling set method {method:?} does not support alpha = {alpha}")]
    ParamUnsupported { method: RulingMethod, alpha: usize },
    #[error("ruling set needs alpha >= 2 and beta >= 1")]
    BadRulingParams,
    #[error("list of node {node} has {size} colors but the node has {degree} neighbors")]
    ListTooSmall {
        node: NodeId,
        size: usize,
        degree: usize,
    },
    #[error("base coloring is not proper at edge {0}-{1}")]
    BaseNotProper(NodeId, NodeId),
    #[error("base coloring gives node {0} color 0; classes start at 1")]
    BaseColorZero(NodeId),
    #[error("layer {layer}: node {node} has {available} available colors for {uncolored} uncolored layer neighbors")]
    LayerListViolation {
        layer: usize,
        node: NodeId,
        available: usize,
        uncolored: usize,
    },
    #[error(transparent)]
    Engine(#[from] EngineError),
}
