//! Graph generators, text formats and report files.

mod generators;
mod io;

pub use generators::{gallai, generate, girth, high_girth, random_regular, Family, GallaiSpec};
pub use io::{
    parse_coloring, parse_graph, parse_partial_coloring, read_graph, write_coloring, write_graph,
    write_report, write_report_file,
};

use thiserror::Error;

use crate::graph::GraphError;

#[derive(Debug, Error)]
pub enum WorkbenchError {
    #[error("infeasible family: {0}")]
    InfeasibleFamily(String),
    #[error("rejection budget exceeded after {attempts} attempts")]
    RejectionBudgetExceeded { attempts: usize },
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
