//! Randomized Δ-coloring.
//!
//! Phase I layers the graph around a sparse set of small degree-choosable
//! components (DCCs). On the DCC-free remainder `H`, a marking process plants
//! T-nodes (two non-adjacent neighbors colored one), nodes with an uncolored
//! path to a T-node or to the boundary of `H` become happy layers, and the
//! unhappy leftover shatters into small components that are colored first.
//! Then the happy layers and finally the DCC layers are colored from the
//! outside in.

mod marking;
mod params;
mod phase_one;
mod small;

use std::collections::BTreeMap;

use thiserror::Error;

pub use marking::{
    build_happy_layers, component_sizes, marking_process, shattering_stats, HappyLayers,
    MarkStatus, MarkingOutcome, ShatterRecord,
};
pub use params::{
    default_n_cap, derive, gamma, large_delta_r, small_component_radius, small_delta_r,
    MarkingParams, RandConfig, RandParams, Variant,
};
pub use phase_one::{remove_small_dccs, PhaseOne};
pub use small::{color_small_components, SmallStats};

use crate::engine::{stream_key, PartialColoring, RunReport};
use crate::graph::{is_nice, Graph, NodeId};
use crate::oracle::{list_color_backtrack, verify};
use crate::primitives::{
    layered_color, list_color, LayerDecomposition, ListAssignment, ListStrategy, PrimitiveError,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RandError {
    #[error("graph is not nice (it is disconnected, a clique, a cycle or a path)")]
    NotNice,
    #[error("variant {variant:?} does not support delta = {delta}")]
    DeltaUnsupported { variant: Variant, delta: usize },
    #[error("leftover component of size {size} exceeds the cap {cap}")]
    ComponentTooLarge { size: usize, cap: usize },
    #[error("leftover component of size {component_size} has no free node and no small DCC")]
    EmptyBaseLayer { component_size: usize },
    #[error("base set containing node {node} could not be colored from its lists")]
    BaseUncolorable { node: NodeId },
    #[error(transparent)]
    Primitive(#[from] PrimitiveError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RandStats {
    pub h_size: usize,
    pub tnodes: usize,
    pub marked: usize,
    pub demoted: usize,
    pub leftover: usize,
    pub max_component: usize,
    pub component_histogram: BTreeMap<usize, usize>,
    pub third_stage_misses: usize,
    pub small: SmallStats,
}

impl RandStats {
    pub fn unhappy_fraction(&self) -> f64 {
        if self.h_size == 0 {
            0.0
        } else {
            self.leftover as f64 / self.h_size as f64
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RandOutcome {
    pub coloring: PartialColoring,
    pub report: RunReport,
    pub variant: Variant,
    pub marking: MarkingParams,
    pub params: RandParams,
    pub stats: RandStats,
}

impl RandOutcome {
    pub fn shatter_record(&self) -> ShatterRecord {
        ShatterRecord {
            seed: self.report.seed,
            n: self.report.n,
            delta: self.report.delta,
            variant: self.variant,
            r: self.marking.r,
            b: self.marking.b,
            unhappy_fraction: self.stats.unhappy_fraction(),
            max_component: self.stats.max_component,
            component_histogram: self.stats.component_histogram.clone(),
        }
    }
}

/// List-colors the uncolored `nodes` as one instance; every node must have
/// more available colors than uncolored neighbors among `nodes`.
fn color_layer_zero(
    g: &Graph,
    nodes: &[NodeId],
    coloring: &mut PartialColoring,
    palette: u32,
    seed: u64,
) -> Result<usize, RandError> {
    if nodes.is_empty() {
        return Ok(0);
    }
    let sub = g.induced(nodes);
    let mut lists = Vec::with_capacity(nodes.len());
    for (j, &v) in nodes.iter().enumerate() {
        let avail = coloring.free_colors(g, v, palette);
        if avail.len() <= sub.degree(j) {
            let e = PrimitiveError::LayerListViolation {
                layer: 0,
                node: v,
                available: avail.len(),
                uncolored: sub.degree(j),
            };
            return Err(e.into());
        }
        lists.push(avail);
    }
    let out = list_color(
        &sub,
        &ListAssignment::new(lists),
        ListStrategy::Randomized,
        seed,
    )?;
    for (j, &v) in nodes.iter().enumerate() {
        coloring.set(v, out.colors[j]);
    }
    Ok(out.rounds + 1)
}

/// Phase I depends only on the graph, so it is computed once and shared by
/// runs with different seeds.
pub struct RandomizedPipeline<'g> {
    g: &'g Graph,
    variant: Variant,
    marking: MarkingParams,
    params: RandParams,
    phase_one: PhaseOne,
}

impl<'g> RandomizedPipeline<'g> {
    pub fn new(g: &'g Graph, variant: Variant, cfg: &RandConfig) -> Result<Self, RandError> {
        if !is_nice(g) {
            return Err(RandError::NotNice);
        }
        let (marking, params) = derive(g.n(), g.max_degree(), variant, cfg)?;
        let phase_one = remove_small_dccs(g, marking.r, params.beta, params.s, 0)?;
        Ok(RandomizedPipeline {
            g,
            variant,
            marking,
            params,
            phase_one,
        })
    }

    pub fn phase_one(&self) -> &PhaseOne {
        &self.phase_one
    }

    pub fn marking_params(&self) -> &MarkingParams {
        &self.marking
    }

    pub fn params(&self) -> &RandParams {
        &self.params
    }

    pub fn run(&self, seed: u64) -> Result<RandOutcome, RandError> {
        let g = self.g;
        let (mp, rp, one, variant) = (self.marking, self.params, &self.phase_one, self.variant);
        let n = g.n();
        let delta = g.max_degree();
        let palette = delta as u32;
        let algorithm = match variant {
            Variant::Large => "rand",
            Variant::Small => "rand-small",
        };
        let mut report = RunReport::new(algorithm, seed, n, delta);
        report.charge("dcc_search", one.search_rounds as u64);
        report.charge("virtual_ruling", one.ruling_rounds as u64);
        report.charge("b_layers", one.layers.depth() as u64);

        // Phase II on H.
        let to_global = &one.remainder;
        let h = g.induced(to_global);
        let marks = marking_process(&h, &mp, stream_key(seed, 0, 2));
        report.charge("marking", mp.b as u64 + 2);
        let happy = build_happy_layers(&h, &marks, &mp, delta);
        report.charge("happy_layers", 3 * mp.r as u64);

        let mut coloring = PartialColoring::uncolored(n);
        for &v in &happy.marked {
            coloring.set(to_global[v], 1);
        }
        let (component_histogram, max_component) = component_sizes(&h, &happy.leftover);
        let leftover: Vec<NodeId> = happy.leftover.iter().map(|&v| to_global[v]).collect();
        let small = color_small_components(
            g,
            &leftover,
            &mut coloring,
            delta,
            &rp,
            stream_key(seed, 0, 3),
        )?;
        report.charge("small_components", small.rounds as u64);

        // Phase III: C-layers from the outside in, then C_0.
        let c_layers: Vec<Vec<NodeId>> = happy
            .layers
            .layers
            .iter()
            .map(|l| l.iter().map(|&v| to_global[v]).collect())
            .collect();
        let c0 = c_layers.first().cloned().unwrap_or_default();
        let dec_c =
            LayerDecomposition::from_layers(g, c_layers).expect("happy layers stay layered in g");
        let lc = layered_color(
            g,
            &dec_c,
            palette,
            &coloring,
            ListStrategy::Randomized,
            stream_key(seed, 0, 4),
        )?;
        coloring = lc.coloring;
        let c0_rounds = color_layer_zero(g, &c0, &mut coloring, palette, stream_key(seed, 0, 5))?;
        report.charge("c_layer_coloring", (lc.rounds + c0_rounds) as u64);

        // Phase IV: B-layers from the outside in, then the base DCCs.
        let lb = layered_color(
            g,
            &one.layers,
            palette,
            &coloring,
            ListStrategy::Randomized,
            stream_key(seed, 0, 6),
        )?;
        coloring = lb.coloring;
        report.charge("b_layer_coloring", lb.rounds as u64);
        for dcc in &one.base_dccs {
            let lists: Vec<Vec<u32>> = dcc
                .iter()
                .map(|&u| coloring.free_colors(g, u, palette))
                .collect();
            let colors = list_color_backtrack(&g.induced(dcc), &lists)
                .ok_or(RandError::BaseUncolorable { node: dcc[0] })?;
            for (&u, c) in dcc.iter().zip(colors) {
                coloring.set(u, c);
            }
        }
        report.charge("b0_brute_force", mp.r as u64);

        report.valid = verify(g, &coloring, palette, None).is_ok();
        let stats = RandStats {
            h_size: h.n(),
            tnodes: marks.tnodes.len() - happy.demoted.len(),
            marked: happy.marked.len(),
            demoted: happy.demoted.len(),
            leftover: leftover.len(),
            max_component,
            component_histogram,
            third_stage_misses: happy.third_stage_misses,
            small,
        };
        Ok(RandOutcome {
            coloring,
            report,
            variant,
            marking: mp,
            params: rp,
            stats,
        })
    }
}

pub fn run_randomized(
    g: &Graph,
    variant: Variant,
    seed: u64,
    cfg: &RandConfig,
) -> Result<RandOutcome, RandError> {
    RandomizedPipeline::new(g, variant, cfg)?.run(seed)
}
