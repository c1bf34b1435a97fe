//! Deterministic Δ-coloring by layering around a sparse base set.
//!
//! Both algorithms pick a base set `B₀` of nodes at pairwise distance at
//! least `R`, color the BFS layers around it from the outside in, and then
//! complete every base node with the Brooks token walk. They differ in how
//! the base set is found and how each layer's list coloring is scheduled.

use thiserror::Error;

use crate::brooks::{brooks_radius, complete_node, BrooksError};
use crate::engine::{PartialColoring, RunReport};
use crate::graph::{is_nice, Graph, NodeId};
use crate::oracle::verify;
use crate::primitives::{
    layered_color, linial_coloring, network_decomposition, ruling_set, LayerDecomposition,
    ListStrategy, PrimitiveError, RulingMethod, RulingSetParams,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DetError {
    #[error("graph is not nice (it is disconnected, a clique, a cycle or a path)")]
    NotNice,
    #[error("layer {depth} exceeds the layer bound {bound}")]
    LayerBound { depth: usize, bound: usize },
    #[error(transparent)]
    Primitive(#[from] PrimitiveError),
    #[error(transparent)]
    Brooks(#[from] BrooksError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DetParams {
    /// Minimum distance between base nodes.
    pub r: usize,
    /// Radius of each Brooks completion.
    pub rho: usize,
}

impl DetParams {
    /// `R = max(ceil(4 log_{Δ-1} n) + 1, 2ρ + 2)`, so completion balls of
    /// different base nodes are disjoint and non-adjacent.
    pub fn new(n: usize, delta: usize) -> Self {
        let rho = brooks_radius(n, delta);
        let four_log =
            (4.0 * (n.max(2) as f64).ln() / ((delta - 1) as f64).ln() - 1e-9).ceil() as usize;
        DetParams {
            r: (four_log + 1).max(2 * rho + 2),
            rho,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DetOutcome {
    pub coloring: PartialColoring,
    pub report: RunReport,
    pub params: DetParams,
    pub base: Vec<NodeId>,
    /// Deepest layer index.
    pub depth: usize,
}

fn check_input(g: &Graph) -> Result<usize, DetError> {
    if !is_nice(g) {
        return Err(DetError::NotNice);
    }
    Ok(g.max_degree())
}

fn complete_base(
    g: &Graph,
    coloring: &mut PartialColoring,
    base: &[NodeId],
    rho: usize,
) -> Result<(), DetError> {
    for &v in base {
        complete_node(g, coloring, v, rho)?;
    }
    Ok(())
}

/// Ruling-set variant: Linial coloring, a DetK `(R, ·)` ruling set as the
/// base, layers out to the measured covering distance, Linial classes
/// scheduling each layer.
pub fn color_det_rulingforest(g: &Graph) -> Result<DetOutcome, DetError> {
    let delta = check_input(g)?;
    let params = DetParams::new(g.n(), delta);
    let mut report = RunReport::new("det", 0, g.n(), delta);

    let lin = linial_coloring(g)?;
    report.charge("linial", lin.rounds as u64);

    let rs = ruling_set(
        g,
        RulingSetParams {
            alpha: params.r,
            beta: 1,
            method: RulingMethod::DetK,
        },
        0,
    )?;
    report.charge("ruling_set", rs.rounds as u64);

    let dec = LayerDecomposition::from_base(g, &rs.members, None, None);
    report.charge("layers", dec.depth() as u64);

    let strategy = ListStrategy::ClassSweep { base: &lin.colors };
    let layered = layered_color(
        g,
        &dec,
        delta as u32,
        &PartialColoring::uncolored(g.n()),
        strategy,
        0,
    )?;
    report.charge("layer_coloring", layered.rounds as u64);

    let mut coloring = layered.coloring;
    complete_base(g, &mut coloring, &rs.members, params.rho)?;
    report.charge("brooks", params.rho as u64);

    report.valid = verify(g, &coloring, delta as u32, None).is_ok();
    Ok(DetOutcome {
        coloring,
        report,
        params,
        base: rs.members,
        depth: dec.depth(),
    })
}

/// Network-decomposition variant: the base is a maximal `R`-independent set
/// chosen greedily in (cluster color, cluster id, node id) order, so it is an
/// `(R, R - 1)` ruling set; layers are scheduled cluster color by color.
pub fn color_det_netcomp(g: &Graph) -> Result<DetOutcome, DetError> {
    let delta = check_input(g)?;
    let n = g.n();
    let params = DetParams::new(n, delta);
    let mut report = RunReport::new("netcomp", 0, n, delta);

    let log_n = (usize::BITS - n.leading_zeros()) as usize;
    let nd = network_decomposition(g, 2 * log_n, 0)?;
    report.charge("network_decomposition", nd.rounds as u64);

    let mut order: Vec<NodeId> = (0..n).collect();
    order.sort_by_key(|&v| (nd.cluster_color[nd.cluster_of[v]], nd.cluster_of[v], v));
    let mut blocked = vec![false; n];
    let mut base = Vec::new();
    for v in order {
        if blocked[v] {
            continue;
        }
        base.push(v);
        for (u, d) in g
            .distances_from(&[v], Some(params.r - 1))
            .into_iter()
            .enumerate()
        {
            if d.is_some() {
                blocked[u] = true;
            }
        }
    }
    base.sort_unstable();
    // Each color class gathers radius R around its cluster.
    report.charge(
        "ruling_set",
        nd.colors as u64 * (nd.diameter + params.r) as u64,
    );

    let dec = LayerDecomposition::from_base(g, &base, None, None);
    if dec.depth() > params.r + 1 {
        return Err(DetError::LayerBound {
            depth: dec.depth(),
            bound: params.r + 1,
        });
    }
    report.charge("layers", dec.depth() as u64);

    let node_colors = nd.node_colors();
    let strategy = ListStrategy::ClusterSweep {
        cluster_color: &node_colors,
        diameter: nd.diameter,
    };
    let layered = layered_color(
        g,
        &dec,
        delta as u32,
        &PartialColoring::uncolored(n),
        strategy,
        0,
    )?;
    report.charge("layer_coloring", layered.rounds as u64);

    let mut coloring = layered.coloring;
    complete_base(g, &mut coloring, &base, params.rho)?;
    report.charge("brooks", params.rho as u64);

    report.valid = verify(g, &coloring, delta as u32, None).is_ok();
    Ok(DetOutcome {
        coloring,
        report,
        params,
        base,
        depth: dec.depth(),
    })
}
