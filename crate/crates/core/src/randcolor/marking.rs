use std::collections::BTreeMap;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::engine::NodeRng;
use crate::graph::{Graph, NodeId};
use crate::primitives::LayerDecomposition;

use super::{MarkingParams, Variant};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MarkStatus {
    Tnode,
    Marked,
    Plain,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkingOutcome {
    /// Sorted surviving selected nodes.
    pub tnodes: Vec<NodeId>,
    /// Sorted nodes colored with color one.
    pub marked: Vec<NodeId>,
    /// The two marked neighbors of each T-node, in `tnodes` order.
    pub pairs: Vec<(NodeId, NodeId)>,
    pub status: Vec<MarkStatus>,
}

fn within(h: &Graph, v: NodeId, r: usize, dist: &mut [usize], touched: &mut Vec<NodeId>) {
    dist[v] = 0;
    touched.push(v);
    let mut head = 0;
    while head < touched.len() {
        let u = touched[head];
        head += 1;
        if dist[u] == r {
            continue;
        }
        for &w in h.neighbors(u) {
            if dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                touched.push(w);
            }
        }
    }
}

/// Each node selects itself with probability `p`, backs off if another
/// selected node is within distance `b` or if its neighborhood has no
/// non-adjacent pair, and otherwise marks a uniform non-adjacent pair of
/// neighbors with color one. Randomness comes from the stream of the node's
/// index in `h`.
pub fn marking_process(h: &Graph, params: &MarkingParams, seed: u64) -> MarkingOutcome {
    let n = h.n();
    let selected: Vec<NodeId> = (0..n)
        .filter(|&v| NodeRng::new(seed, v as u64, 0).random::<f64>() < params.p)
        .collect();
    let mut is_sel = vec![false; n];
    for &v in &selected {
        is_sel[v] = true;
    }
    let mut dist = vec![usize::MAX; n];
    let mut touched = Vec::new();
    let mut tnodes = Vec::new();
    let mut pairs = Vec::new();
    for &v in &selected {
        within(h, v, params.b, &mut dist, &mut touched);
        let crowded = touched.iter().any(|&u| u != v && is_sel[u]);
        for &u in &touched {
            dist[u] = usize::MAX;
        }
        touched.clear();
        if crowded {
            continue;
        }
        let nb = h.neighbors(v);
        let options: Vec<(NodeId, NodeId)> = nb
            .iter()
            .enumerate()
            .flat_map(|(i, &a)| nb[i + 1..].iter().map(move |&b| (a, b)))
            .filter(|&(a, b)| !h.has_edge(a, b))
            .collect();
        if options.is_empty() {
            continue;
        }
        let pick = NodeRng::new(seed, v as u64, 1).random_range(0..options.len());
        tnodes.push(v);
        pairs.push(options[pick]);
    }
    let mut status = vec![MarkStatus::Plain; n];
    let mut marked = Vec::with_capacity(2 * tnodes.len());
    for (&t, &(a, b)) in tnodes.iter().zip(&pairs) {
        status[t] = MarkStatus::Tnode;
        status[a] = MarkStatus::Marked;
        status[b] = MarkStatus::Marked;
        marked.extend([a, b]);
    }
    marked.sort_unstable();
    MarkingOutcome {
        tnodes,
        marked,
        pairs,
        status,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HappyLayers {
    /// `C_0` holds the boundary and the surviving T-nodes.
    pub layers: LayerDecomposition,
    /// Sorted nodes still colored one after the boundary rule.
    pub marked: Vec<NodeId>,
    /// T-nodes whose marks were uncolored near the boundary.
    pub demoted: Vec<NodeId>,
    /// Sorted unhappy nodes.
    pub leftover: Vec<NodeId>,
    /// Nodes near a demoted T-node that two stages did not reach.
    pub third_stage_misses: usize,
}

/// BFS through unmarked nodes from `sources`; nodes past depth `free_depth`
/// are entered only if `gate` allows it.
fn gated_bfs(
    h: &Graph,
    sources: &[NodeId],
    marked: &[bool],
    free_depth: usize,
    max_depth: usize,
    gate: &[bool],
) -> Vec<Option<usize>> {
    let mut dist = vec![None; h.n()];
    let mut queue = Vec::new();
    for &s in sources {
        if dist[s].is_none() {
            dist[s] = Some(0);
            queue.push(s);
        }
    }
    let mut head = 0;
    while head < queue.len() {
        let u = queue[head];
        head += 1;
        let d = dist[u].unwrap();
        if d == max_depth {
            continue;
        }
        for &w in h.neighbors(u) {
            if dist[w].is_none() && !marked[w] && (d < free_depth || gate[w]) {
                dist[w] = Some(d + 1);
                queue.push(w);
            }
        }
    }
    dist
}

/// Happy layers of the remainder `h` of a graph with maximum degree `delta`.
///
/// T-nodes with a mark within distance `r` of the boundary are demoted and
/// both their marks uncolored. Layers grow from `C_0` through unmarked nodes:
/// up to depth `r` freely, then up to `2r` only through nodes within an
/// unmarked distance `r` of a demoted T-node.
pub fn build_happy_layers(
    h: &Graph,
    outcome: &MarkingOutcome,
    params: &MarkingParams,
    delta: usize,
) -> HappyLayers {
    let n = h.n();
    let r = params.r;
    let boundary: Vec<NodeId> = (0..n).filter(|&v| h.degree(v) < delta).collect();
    let near_boundary = h.distances_from(&boundary, Some(r));
    let mut demoted = Vec::new();
    let mut tnodes = Vec::new();
    let mut is_marked = vec![false; n];
    for (&t, &(a, b)) in outcome.tnodes.iter().zip(&outcome.pairs) {
        if near_boundary[a].is_some() || near_boundary[b].is_some() {
            demoted.push(t);
        } else {
            tnodes.push(t);
            is_marked[a] = true;
            is_marked[b] = true;
        }
    }
    let marked: Vec<NodeId> = (0..n).filter(|&v| is_marked[v]).collect();

    let no_gate = vec![false; n];
    let near_demoted: Vec<bool> = gated_bfs(h, &demoted, &is_marked, r, r, &no_gate)
        .into_iter()
        .map(|d| d.is_some())
        .collect();
    let mut c0 = boundary;
    c0.extend(&tnodes);
    c0.sort_unstable();
    c0.dedup();
    let dist = gated_bfs(h, &c0, &is_marked, r, 2 * r, &near_demoted);
    let third_stage_misses = (0..n)
        .filter(|&v| near_demoted[v] && dist[v].is_none() && !is_marked[v])
        .count();

    let depth = dist.iter().flatten().copied().max().unwrap_or(0);
    let mut layers = vec![Vec::new(); if c0.is_empty() { 0 } else { depth + 1 }];
    for (v, d) in dist.iter().enumerate() {
        if let Some(d) = d {
            layers[*d].push(v);
        }
    }
    let leftover = (0..n)
        .filter(|&v| dist[v].is_none() && !is_marked[v])
        .collect();
    let layers = LayerDecomposition::from_layers(h, layers).expect("BFS layers");
    HappyLayers {
        layers,
        marked,
        demoted,
        leftover,
        third_stage_misses,
    }
}

/// Connected components of `h[nodes]` as a size histogram and maximum.
pub fn component_sizes(h: &Graph, nodes: &[NodeId]) -> (BTreeMap<usize, usize>, usize) {
    let mut inside = vec![false; h.n()];
    for &v in nodes {
        inside[v] = true;
    }
    let mut hist = BTreeMap::new();
    let mut max = 0;
    let mut stack = Vec::new();
    for &s in nodes {
        if !inside[s] {
            continue;
        }
        inside[s] = false;
        stack.push(s);
        let mut size = 0;
        while let Some(u) = stack.pop() {
            size += 1;
            for &w in h.neighbors(u) {
                if inside[w] {
                    inside[w] = false;
                    stack.push(w);
                }
            }
        }
        *hist.entry(size).or_insert(0) += 1;
        max = max.max(size);
    }
    (hist, max)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ShatterRecord {
    pub seed: u64,
    pub n: usize,
    pub delta: usize,
    pub variant: Variant,
    pub r: usize,
    pub b: usize,
    pub unhappy_fraction: f64,
    pub max_component: usize,
    pub component_histogram: BTreeMap<usize, usize>,
}

impl ShatterRecord {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("record serializes")
    }
}

/// Runs marking and happy layers on `h` once per seed.
pub fn shattering_stats(
    h: &Graph,
    delta: usize,
    variant: Variant,
    params: &MarkingParams,
    seeds: &[u64],
) -> Vec<ShatterRecord> {
    seeds
        .iter()
        .map(|&seed| {
            let out = marking_process(h, params, seed);
            let happy = build_happy_layers(h, &out, params, delta);
            let (component_histogram, max_component) = component_sizes(h, &happy.leftover);
            let unhappy_fraction = if h.n() == 0 {
                0.0
            } else {
                happy.leftover.len() as f64 / h.n() as f64
            };
            ShatterRecord {
                seed,
                n: h.n(),
                delta,
                variant,
                r: params.r,
                b: params.b,
                unhappy_fraction,
                max_component,
                component_histogram,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::test_graphs::*;

    fn params(p: f64, b: usize, r: usize) -> MarkingParams {
        MarkingParams { p, b, r }
    }

    #[test]
    fn adjacent_selections_back_off() {
        let g = path(2);
        let out = marking_process(&g, &params(1.0, 1, 1), 0);
        assert!(out.tnodes.is_empty());
        assert!(out.marked.is_empty());
    }

    #[test]
    fn empty_graph() {
        let g = Graph::empty(0);
        let out = marking_process(&g, &params(0.5, 6, 2), 0);
        assert!(out.tnodes.is_empty());
        let recs = shattering_stats(&g, 3, Variant::Large, &params(0.5, 6, 2), &[1]);
        assert_eq!(recs[0].unhappy_fraction, 0.0);
        assert_eq!(recs[0].max_component, 0);
    }

    #[test]
    fn clique_neighborhood_unselects() {
        let g = complete(4);
        let out = marking_process(&g, &params(1.0, 0, 1), 0);
        assert!(out.tnodes.is_empty());
    }

    #[test]
    fn tnode_pairs_are_non_adjacent_and_separated() {
        let g = crate::workbench::random_regular(2000, 3, 3).unwrap();
        for seed in 0..5 {
            let p = params(0.02, 4, 3);
            let out = marking_process(&g, &p, seed);
            assert!(!out.tnodes.is_empty());
            for (&t, &(a, b)) in out.tnodes.iter().zip(&out.pairs) {
                assert!(g.has_edge(t, a) && g.has_edge(t, b) && !g.has_edge(a, b));
                let d = g.distances_from(&[t], Some(p.b));
                assert!(out.tnodes.iter().all(|&o| o == t || d[o].is_none()));
            }
        }
    }

    #[test]
    fn boundary_and_tnodes_form_c0() {
        // Path 0..9 inside a cubic world: every node is boundary.
        let g = path(10);
        let out = marking_process(&g, &params(0.0, 2, 2), 0);
        let happy = build_happy_layers(&g, &out, &params(0.0, 2, 2), 3);
        assert_eq!(happy.layers.layers[0].len(), 10);
        assert!(happy.leftover.is_empty());
    }

    #[test]
    fn unhappy_without_tnodes_or_boundary() {
        let g = petersen();
        let p = params(0.0, 6, 2);
        let happy = build_happy_layers(&g, &marking_process(&g, &p, 0), &p, 3);
        assert_eq!(happy.leftover.len(), 10);
        assert_eq!(happy.layers.layers.len(), 0);
    }

    #[test]
    fn single_low_degree_node_is_happy() {
        let g = Graph::empty(1);
        let p = params(0.5, 6, 2);
        let recs = shattering_stats(&g, 3, Variant::Small, &p, &[0, 1]);
        assert!(recs.iter().all(|r| r.unhappy_fraction == 0.0));
    }

    #[test]
    fn happy_layers_reach_through_unmarked_paths() {
        let g = crate::workbench::high_girth(600, 3, 8, 2).unwrap();
        let p = params(0.05, 2, 3);
        let out = marking_process(&g, &p, 4);
        let happy = build_happy_layers(&g, &out, &p, 3);
        assert_eq!(happy.layers.layers[0], out.tnodes);
        for (i, layer) in happy.layers.layers.iter().enumerate() {
            assert!(i <= p.r);
            assert!(layer.iter().all(|&v| !happy.marked.contains(&v)));
        }
        let covered = happy.layers.covered().len();
        assert_eq!(covered + happy.marked.len() + happy.leftover.len(), 600);
    }
}
