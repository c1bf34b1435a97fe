use crate::engine::PartialColoring;
use crate::graph::{Graph, NodeId};

use super::{list_color, ListAssignment, ListStrategy, PrimitiveError};

/// Disjoint layers `L_0..L_s`; `layer_of[v]` is `None` for uncovered nodes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LayerDecomposition {
    pub layers: Vec<Vec<NodeId>>,
    pub layer_of: Vec<Option<usize>>,
}

impl LayerDecomposition {
    /// BFS distance layers from `base` inside the subgraph induced by `within`
    /// (all nodes if `None`), up to `max_depth`.
    pub fn from_base(
        g: &Graph,
        base: &[NodeId],
        within: Option<&[bool]>,
        max_depth: Option<usize>,
    ) -> Self {
        let dist = g.distances_within(base, max_depth, |v| within.is_none_or(|w| w[v]));
        let depth = dist.iter().flatten().copied().max().unwrap_or(0);
        let mut layers = vec![Vec::new(); if base.is_empty() { 0 } else { depth + 1 }];
        for (v, d) in dist.iter().enumerate() {
            if let Some(d) = d {
                layers[*d].push(v);
            }
        }
        LayerDecomposition {
            layers,
            layer_of: dist,
        }
    }

    /// Wraps explicit layers; each node of `L_i`, `i >= 1`, must have a
    /// neighbor in `L_{i-1}`.
    pub fn from_layers(g: &Graph, layers: Vec<Vec<NodeId>>) -> Option<Self> {
        let mut layer_of = vec![None; g.n()];
        for (i, l) in layers.iter().enumerate() {
            for &v in l {
                if layer_of[v].is_some() {
                    return None;
                }
                layer_of[v] = Some(i);
            }
        }
        let ok = layers.iter().enumerate().skip(1).all(|(i, l)| {
            l.iter()
                .all(|&v| g.neighbors(v).iter().any(|&w| layer_of[w] == Some(i - 1)))
        });
        ok.then_some(LayerDecomposition { layers, layer_of })
    }

    pub fn depth(&self) -> usize {
        self.layers.len().saturating_sub(1)
    }

    pub fn covered(&self) -> Vec<NodeId> {
        let mut c: Vec<NodeId> = self.layers.iter().flatten().copied().collect();
        c.sort_unstable();
        c
    }

    pub fn is_covered(&self, v: NodeId) -> bool {
        self.layer_of[v].is_some()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LayeredColoring {
    pub coloring: PartialColoring,
    pub rounds: usize,
}

/// Colors layers `L_s..L_1` in this order, each as a list coloring instance
/// with lists `{1..palette}` minus the colors of colored neighbors. Nodes that
/// are already colored keep their color; `L_0` stays uncolored.
pub fn layered_color(
    g: &Graph,
    dec: &LayerDecomposition,
    palette: u32,
    fixed: &PartialColoring,
    strategy: ListStrategy,
    seed: u64,
) -> Result<LayeredColoring, PrimitiveError> {
    let mut coloring = fixed.clone();
    let mut rounds = 0;
    for i in (1..dec.layers.len()).rev() {
        let nodes: Vec<NodeId> = dec.layers[i]
            .iter()
            .copied()
            .filter(|&v| !coloring.is_colored(v))
            .collect();
        if nodes.is_empty() {
            continue;
        }
        let sub = g.induced(&nodes);
        let mut lists = Vec::with_capacity(nodes.len());
        for (j, &v) in nodes.iter().enumerate() {
            let avail = coloring.free_colors(g, v, palette);
            if avail.len() <= sub.degree(j) {
                return Err(PrimitiveError::LayerListViolation {
                    layer: i,
                    node: v,
                    available: avail.len(),
                    uncolored: sub.degree(j),
                });
            }
            lists.push(avail);
        }
        let lists = ListAssignment::new(lists);
        let local_strategy;
        let buf: Vec<u32>;
        match strategy {
            ListStrategy::ClassSweep { base } => {
                buf = nodes.iter().map(|&v| base[v]).collect();
                local_strategy = ListStrategy::ClassSweep { base: &buf };
            }
            ListStrategy::ClusterSweep {
                cluster_color,
                diameter,
            } => {
                buf = nodes.iter().map(|&v| cluster_color[v]).collect();
                local_strategy = ListStrategy::ClusterSweep {
                    cluster_color: &buf,
                    diameter,
                };
            }
            ListStrategy::Randomized => local_strategy = ListStrategy::Randomized,
        }
        let out = list_color(
            &sub,
            &lists,
            local_strategy,
            seed ^ (i as u64).wrapping_mul(0x9e37_79b9),
        )?;
        for (j, &v) in nodes.iter().enumerate() {
            coloring.set(v, out.colors[j]);
        }
        // One extra round to learn the colors of the layer above.
        rounds += out.rounds + 1;
    }
    Ok(LayeredColoring { coloring, rounds })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::test_graphs::*;

    #[test]
    fn whole_graph_base_is_a_no_op() {
        let g = petersen();
        let all: Vec<NodeId> = (0..10).collect();
        let dec = LayerDecomposition::from_base(&g, &all, None, None);
        assert_eq!(dec.layers.len(), 1);
        let fixed = PartialColoring::uncolored(10);
        let out = layered_color(&g, &dec, 3, &fixed, ListStrategy::Randomized, 0).unwrap();
        assert_eq!(out.coloring, fixed);
    }

    #[test]
    fn star_leaves_are_colored() {
        let g = Graph::from_edges(5, (1..5).map(|i| (0, i))).unwrap();
        let dec = LayerDecomposition::from_base(&g, &[0], None, None);
        assert_eq!(dec.layers, vec![vec![0], vec![1, 2, 3, 4]]);
        let base = [1, 2, 2, 2, 2];
        let out = layered_color(
            &g,
            &dec,
            4,
            &PartialColoring::uncolored(5),
            ListStrategy::ClassSweep { base: &base },
            0,
        )
        .unwrap();
        assert!(out.coloring.get(0).is_none());
        assert!((1..5).all(|v| out.coloring.get(v).is_some_and(|c| (1..=4).contains(&c))));
    }

    #[test]
    fn fixed_nodes_keep_their_colors() {
        let g = cycle(8);
        let dec = LayerDecomposition::from_base(&g, &[0], None, None);
        let mut fixed = PartialColoring::uncolored(8);
        fixed.set(4, 2);
        let out = layered_color(&g, &dec, 3, &fixed, ListStrategy::Randomized, 1).unwrap();
        assert_eq!(out.coloring.get(4), Some(2));
        assert!(out.coloring.is_proper(&g));
        assert_eq!(out.coloring.uncolored_nodes(), vec![0]);
    }

    #[test]
    fn violation_detected() {
        // Triangle, base {0} precolored: nodes 1 and 2 share one color for two.
        let g = complete(3);
        let dec = LayerDecomposition::from_base(&g, &[0], None, None);
        let mut fixed = PartialColoring::uncolored(3);
        fixed.set(0, 1);
        let err = layered_color(&g, &dec, 2, &fixed, ListStrategy::Randomized, 0).unwrap_err();
        assert!(matches!(
            err,
            PrimitiveError::LayerListViolation { layer: 1, .. }
        ));
    }

    #[test]
    fn explicit_layers_are_checked() {
        let g = path(4);
        assert!(LayerDecomposition::from_layers(&g, vec![vec![0], vec![1], vec![2, 3]]).is_none());
        let d =
            LayerDecomposition::from_layers(&g, vec![vec![0], vec![1], vec![2], vec![3]]).unwrap();
        assert_eq!(d.depth(), 3);
    }
}
