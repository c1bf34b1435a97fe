use rayon::prelude::*;

use crate::graph::{DccSearch, Graph, NodeId};
use crate::primitives::{
    ruling_set, LayerDecomposition, PrimitiveError, RulingMethod, RulingSetParams,
};

const CHUNK: usize = 1024;

/// Result of removing small DCCs: the base DCCs, the B-layers around them and
/// the remainder `H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhaseOne {
    /// DCCs picked by the ruling set; pairwise disjoint and non-adjacent.
    pub base_dccs: Vec<Vec<NodeId>>,
    pub layers: LayerDecomposition,
    /// Sorted nodes of `H`.
    pub remainder: Vec<NodeId>,
    /// Number of distinct DCCs found by the per-node searches.
    pub candidates: usize,
    pub search_rounds: usize,
    pub ruling_rounds: usize,
}

/// DCC of radius at most `r` seen by each node, `None` where there is none.
pub(super) fn search_all(
    g: &Graph,
    allowed: Option<&[bool]>,
    nodes: &[NodeId],
    r: usize,
) -> Vec<Option<Vec<NodeId>>> {
    nodes
        .par_chunks(CHUNK)
        .flat_map_iter(|chunk| {
            let mut s = match allowed {
                Some(a) => DccSearch::within(g, a),
                None => DccSearch::new(g),
            };
            chunk.iter().map(|&v| s.search(v, r)).collect::<Vec<_>>()
        })
        .collect()
}

/// Graph on `sets`: two sets are adjacent when they intersect or an edge of
/// `g` joins them.
pub(super) fn virtual_graph(g: &Graph, sets: &[Vec<NodeId>]) -> Graph {
    let mut owners: Vec<Vec<u32>> = vec![Vec::new(); g.n()];
    for (i, s) in sets.iter().enumerate() {
        for &u in s {
            owners[u].push(i as u32);
        }
    }
    let mut edges = Vec::new();
    for (i, s) in sets.iter().enumerate() {
        let mut near: Vec<u32> = Vec::new();
        for &u in s {
            near.extend(&owners[u]);
            for &w in g.neighbors(u) {
                near.extend(&owners[w]);
            }
        }
        near.sort_unstable();
        near.dedup();
        edges.extend(
            near.into_iter()
                .map(|j| j as usize)
                .filter(|&j| j > i)
                .map(|j| (i, j)),
        );
    }
    Graph::from_edges(sets.len(), edges).expect("virtual edges are simple")
}

pub(super) fn dedup_sets(found: Vec<Option<Vec<NodeId>>>) -> Vec<Vec<NodeId>> {
    let mut sets: Vec<Vec<NodeId>> = found.into_iter().flatten().collect();
    sets.sort_unstable();
    sets.dedup();
    sets
}

/// Every node searches its `r`-ball for a DCC; a `(2, β)` ruling set of the
/// virtual DCC graph picks the base DCCs, and every node within distance
/// `max(s, farthest DCC-finding node)` of them is layered.
pub fn remove_small_dccs(
    g: &Graph,
    r: usize,
    beta: usize,
    s: usize,
    seed: u64,
) -> Result<PhaseOne, PrimitiveError> {
    let n = g.n();
    let all: Vec<NodeId> = (0..n).collect();
    let found = search_all(g, None, &all, r);
    let finders: Vec<NodeId> = (0..n).filter(|&v| found[v].is_some()).collect();
    let dccs = dedup_sets(found);
    let candidates = dccs.len();
    if dccs.is_empty() {
        return Ok(PhaseOne {
            base_dccs: Vec::new(),
            layers: LayerDecomposition::from_base(g, &[], None, None),
            remainder: all,
            candidates,
            search_rounds: r,
            ruling_rounds: 0,
        });
    }
    let virt = virtual_graph(g, &dccs);
    let rs = ruling_set(
        &virt,
        RulingSetParams {
            alpha: 2,
            beta,
            method: RulingMethod::Det2Beta,
        },
        seed,
    )?;
    // One virtual round spans two DCCs of radius r and the edge between them.
    let ruling_rounds = rs.rounds * (2 * r + 2);
    let base_dccs: Vec<Vec<NodeId>> = rs.members.iter().map(|&i| dccs[i].clone()).collect();
    let mut base: Vec<NodeId> = base_dccs.iter().flatten().copied().collect();
    base.sort_unstable();

    let dist = g.distances_from(&base, None);
    let needed = finders.iter().filter_map(|&v| dist[v]).max().unwrap_or(0);
    let layers = LayerDecomposition::from_base(g, &base, None, Some(s.max(needed)));
    let remainder = (0..n).filter(|&v| !layers.is_covered(v)).collect();
    Ok(PhaseOne {
        base_dccs,
        layers,
        remainder,
        candidates,
        search_rounds: r,
        ruling_rounds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::is_dcc_set;
    use crate::graph::test_graphs::*;

    #[test]
    fn c4_is_all_base() {
        let g = cycle(4);
        let p = remove_small_dccs(&g, 2, 12, 36, 0).unwrap();
        assert_eq!(p.base_dccs, vec![vec![0, 1, 2, 3]]);
        assert!(p.remainder.is_empty());
        assert_eq!(p.layers.depth(), 0);
    }

    #[test]
    fn petersen_remainder_empty() {
        let g = petersen();
        let p = remove_small_dccs(&g, 3, 18, 72, 0).unwrap();
        assert!(p.remainder.is_empty());
        assert!(p.base_dccs.iter().all(|d| is_dcc_set(&g, d)));
    }

    #[test]
    fn tree_has_no_dccs() {
        let g = path(10);
        let p = remove_small_dccs(&g, 4, 24, 120, 0).unwrap();
        assert_eq!(p.remainder.len(), 10);
        assert_eq!(p.candidates, 0);
    }

    #[test]
    fn base_dccs_are_separated() {
        // Two squares joined by a long path.
        let mut e = vec![(0, 1), (1, 2), (2, 3), (3, 0)];
        for i in 3..12 {
            e.push((i, i + 1));
        }
        e.extend([(12, 13), (13, 14), (14, 15), (15, 12)]);
        let g = Graph::from_edges(16, e).unwrap();
        let p = remove_small_dccs(&g, 2, 12, 2, 0).unwrap();
        assert_eq!(p.base_dccs.len(), 2);
        // Layers stop at depth s; the middle of the path is the remainder.
        assert!(p.remainder.contains(&7) && p.remainder.contains(&8));
        assert!(!p.remainder.contains(&5));
    }
}
