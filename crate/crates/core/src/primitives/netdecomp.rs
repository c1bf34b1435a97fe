use crate::graph::{Graph, NodeId};

use super::{ruling_set, PrimitiveError, RulingMethod, RulingSetParams};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NetworkDecomposition {
    pub cluster_of: Vec<usize>,
    /// Sorted node sets indexed by cluster id.
    pub clusters: Vec<Vec<NodeId>>,
    /// Color of each cluster, from 1.
    pub cluster_color: Vec<u32>,
    /// Largest weak diameter over all clusters.
    pub diameter: usize,
    pub colors: u32,
    pub rounds: usize,
}

impl NetworkDecomposition {
    pub fn node_colors(&self) -> Vec<u32> {
        self.cluster_of
            .iter()
            .map(|&c| self.cluster_color[c])
            .collect()
    }

    /// Same-colored clusters are non-adjacent and weak diameters are at most
    /// `max_diameter`.
    pub fn verify(&self, g: &Graph, max_diameter: usize) -> bool {
        let separated = g.edges().all(|(u, v)| {
            let (a, b) = (self.cluster_of[u], self.cluster_of[v]);
            a == b || self.cluster_color[a] != self.cluster_color[b]
        });
        separated
            && self
                .clusters
                .iter()
                .all(|c| weak_diameter(g, c) <= max_diameter)
    }
}

fn weak_diameter(g: &Graph, cluster: &[NodeId]) -> usize {
    let mut best = 0;
    for &s in cluster {
        let d = g.distances_from(&[s], None);
        for &t in cluster {
            best = best.max(d[t].expect("clusters lie in one component"));
        }
    }
    best
}

/// Ball carving, one color at a time. Each wave picks centers at pairwise
/// distance `> 2 r_max + 2` in the unclustered part and grows a ball around
/// each center while the next layer would at least double it (at most
/// `r_max = min(log₂ n, d_target / 2)` steps). The ball joins the current
/// color and its outer layer is deferred to later colors.
pub fn network_decomposition(
    g: &Graph,
    d_target: usize,
    seed: u64,
) -> Result<NetworkDecomposition, PrimitiveError> {
    let n = g.n();
    let log_n = (usize::BITS - n.max(1).leading_zeros() - 1) as usize;
    let rmax = log_n.min(d_target / 2);
    let mut remaining = vec![true; n];
    let mut cluster_of = vec![usize::MAX; n];
    let mut clusters: Vec<Vec<NodeId>> = Vec::new();
    let mut cluster_color = Vec::new();
    let mut color = 0u32;
    let mut rounds = 0;
    let mut dist = vec![usize::MAX; n];

    while remaining.iter().any(|&r| r) {
        color += 1;
        let mut active = remaining.clone();
        loop {
            let nodes: Vec<NodeId> = (0..n).filter(|&v| active[v]).collect();
            if nodes.is_empty() {
                break;
            }
            let sub = g.induced(&nodes);
            let params = RulingSetParams {
                alpha: 2 * rmax + 3,
                beta: 1,
                method: RulingMethod::DetK,
            };
            let centers = ruling_set(&sub, params, seed)?;
            rounds += centers.rounds + rmax + 1;
            let mut carved = Vec::new();
            for &lc in &centers.members {
                let c = nodes[lc];
                // Ball layers inside the active subgraph.
                let mut layers = vec![vec![c]];
                dist[c] = 0;
                let mut touched = vec![c];
                let mut size = 1;
                loop {
                    let mut next = Vec::new();
                    for &u in layers.last().unwrap() {
                        for &w in g.neighbors(u) {
                            if active[w] && dist[w] == usize::MAX {
                                dist[w] = layers.len();
                                touched.push(w);
                                next.push(w);
                            }
                        }
                    }
                    let grows = size + next.len() > 2 * size;
                    size += next.len();
                    layers.push(next);
                    if !grows || layers.len() - 2 == rmax {
                        break;
                    }
                }
                for v in touched {
                    dist[v] = usize::MAX;
                }
                let boundary = layers.pop().unwrap();
                let mut cluster: Vec<NodeId> = layers.into_iter().flatten().collect();
                cluster.sort_unstable();
                carved.push((cluster, boundary));
            }
            for (cluster, boundary) in carved {
                let id = clusters.len();
                for &v in &cluster {
                    cluster_of[v] = id;
                    remaining[v] = false;
                    active[v] = false;
                }
                for v in boundary {
                    active[v] = false;
                }
                clusters.push(cluster);
                cluster_color.push(color);
            }
        }
    }
    let diameter = clusters
        .iter()
        .map(|c| weak_diameter(g, c))
        .max()
        .unwrap_or(0);
    Ok(NetworkDecomposition {
        cluster_of,
        clusters,
        cluster_color,
        diameter,
        colors: color,
        rounds,
    })
}
