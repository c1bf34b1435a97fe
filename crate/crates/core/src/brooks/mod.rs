//! Completing a Δ-coloring with one uncolored node by recoloring a small ball.
//!
//! A token starts at the uncolored node and walks along a shortest path
//! toward the closest low-degree node or degree-choosable component. Each
//! step hands the next node's color to the current one. The walk ends early
//! once the token sits on a node with a free color; at a component, the whole
//! component is uncolored and list-colored again.

use thiserror::Error;

use crate::engine::PartialColoring;
use crate::graph::{find_dcc_within_radius, is_nice, Graph, NodeId};
use crate::oracle::list_color_backtrack;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BrooksError {
    #[error("graph is not nice (it is disconnected, a clique, a cycle or a path)")]
    NotNice,
    #[error("bad partial coloring: {0}")]
    BadPartial(String),
    #[error(
        "no low-degree node or degree-choosable component within distance {radius} of node {node}"
    )]
    NoTarget { node: NodeId, radius: usize },
}

/// `ceil(2 ln n / ln(Δ - 1))`, the radius of the recolored ball.
pub fn brooks_radius(n: usize, delta: usize) -> usize {
    assert!(delta >= 3, "radius defined for delta >= 3");
    let r = 2.0 * (n.max(2) as f64).ln() / ((delta - 1) as f64).ln();
    // Guard against 2.0000000001 style rounding.
    let f = r.floor();
    if r - f < 1e-9 {
        f as usize
    } else {
        r.ceil() as usize
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Completion {
    pub coloring: PartialColoring,
    /// Sorted nodes whose color changed, including the completed node.
    pub changed: Vec<NodeId>,
    pub token_moves: usize,
    /// Farthest distance from the start node to a changed node.
    pub reach: usize,
    pub rounds: usize,
}

/// Extends a proper coloring that misses exactly one node to a proper
/// Δ-coloring of a nice graph.
pub fn complete_one_uncolored(
    g: &Graph,
    partial: &PartialColoring,
) -> Result<Completion, BrooksError> {
    if !is_nice(g) {
        return Err(BrooksError::NotNice);
    }
    let delta = g.max_degree();
    if partial.len() != g.n() {
        return Err(BrooksError::BadPartial(format!(
            "{} entries for {} nodes",
            partial.len(),
            g.n()
        )));
    }
    let missing = partial.uncolored_nodes();
    let [v] = missing[..] else {
        return Err(BrooksError::BadPartial(format!(
            "{} uncolored nodes, expected 1",
            missing.len()
        )));
    };
    if let Some(u) =
        (0..g.n()).find(|&u| partial.get(u).is_some_and(|c| c == 0 || c as usize > delta))
    {
        return Err(BrooksError::BadPartial(format!(
            "node {u} uses a color outside 1..={delta}"
        )));
    }
    if !partial.is_proper(g) {
        return Err(BrooksError::BadPartial("coloring is not proper".into()));
    }
    let mut coloring = partial.clone();
    complete_node(g, &mut coloring, v, brooks_radius(g.n(), delta))
}

/// Colors `v` in place, recoloring only inside `ball(v, radius)`. Other
/// uncolored nodes must be farther than `2 * radius + 1` from `v`.
pub(crate) fn complete_node(
    g: &Graph,
    coloring: &mut PartialColoring,
    v: NodeId,
    radius: usize,
) -> Result<Completion, BrooksError> {
    let delta = g.max_degree() as u32;
    let before = coloring.clone();
    let finish = |coloring: &PartialColoring, moves: usize| {
        let dist = g.distances_from(&[v], Some(radius));
        let changed: Vec<NodeId> = (0..g.n())
            .filter(|&u| u == v || coloring.get(u) != before.get(u))
            .collect();
        let reach = changed
            .iter()
            .map(|&u| dist[u].unwrap_or(usize::MAX))
            .max()
            .unwrap_or(0);
        Completion {
            coloring: coloring.clone(),
            changed,
            token_moves: moves,
            reach,
            rounds: radius,
        }
    };
    if let Some(c) = coloring.first_free(g, v, delta) {
        coloring.set(v, c);
        return Ok(finish(coloring, 0));
    }

    let dist = g.distances_from(&[v], Some(radius));
    let low = (0..g.n())
        .filter(|&u| dist[u].is_some() && g.degree(u) < delta as usize)
        .min_by_key(|&u| (dist[u].unwrap(), u));
    let dcc = find_dcc_within_radius(g, v, radius);
    let dcc_entry = dcc
        .as_ref()
        .map(|s| *s.iter().min_by_key(|&&u| (dist[u].unwrap(), u)).unwrap());
    let target = match (low, dcc_entry) {
        (Some(l), Some(d)) if dist[d].unwrap() < dist[l].unwrap() => d,
        (Some(l), _) => l,
        (None, Some(d)) => d,
        (None, None) => return Err(BrooksError::NoTarget { node: v, radius }),
    };

    // Shortest path from v to the target, smallest ids first.
    let mut path = vec![target];
    let mut cur = target;
    while cur != v {
        let d = dist[cur].unwrap();
        cur = *g
            .neighbors(cur)
            .iter()
            .filter(|&&w| dist[w] == Some(d - 1))
            .min()
            .unwrap();
        path.push(cur);
    }
    path.reverse();

    let mut moves = 0;
    for pair in path.windows(2) {
        let (x, y) = (pair[0], pair[1]);
        if let Some(c) = coloring.first_free(g, x, delta) {
            coloring.set(x, c);
            return Ok(finish(coloring, moves));
        }
        let c = coloring.get(y).expect("path nodes are colored");
        coloring.unset(y);
        coloring.set(x, c);
        moves += 1;
    }
    if let Some(c) = coloring.first_free(g, target, delta) {
        coloring.set(target, c);
        return Ok(finish(coloring, moves));
    }

    let set = dcc.expect("a full-degree target without a free color is a component entry");
    for &u in &set {
        coloring.unset(u);
    }
    let lists: Vec<Vec<u32>> = set
        .iter()
        .map(|&u| coloring.free_colors(g, u, delta))
        .collect();
    let local = g.induced(&set);
    let colors = list_color_backtrack(&local, &lists)
        .expect("degree-choosable components are colorable from degree lists");
    for (i, &u) in set.iter().enumerate() {
        coloring.set(u, colors[i]);
    }
    Ok(finish(coloring, moves))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::test_graphs::*;
    use crate::oracle::{oracle_delta_coloring, verify};

    /// Oracle coloring of `g - v` in which the neighbors of `v` get pairwise
    /// distinct colors when possible, so `v` has no free color.
    fn hard_partial(g: &Graph, v: NodeId) -> PartialColoring {
        let k = g.max_degree() as u32;
        let nb = g.neighbors(v);
        let mut edges: Vec<(NodeId, NodeId)> =
            g.edges().filter(|&(a, b)| a != v && b != v).collect();
        for (i, &a) in nb.iter().enumerate() {
            for &b in &nb[i + 1..] {
                if !g.has_edge(a, b) {
                    edges.push((a, b));
                }
            }
        }
        let forced = Graph::from_edges(g.n(), edges).unwrap();
        let c = oracle_delta_coloring(&forced, k)
            .unwrap()
            .expect("forced instance colorable");
        let mut p = PartialColoring::from_colors(c);
        p.unset(v);
        p
    }

    #[test]
    fn radius_values() {
        assert_eq!(brooks_radius(6, 3), 6);
        assert_eq!(brooks_radius(10, 3), 7);
        assert_eq!(brooks_radius(16, 5), 4);
    }

    #[test]
    fn free_color_is_used_directly() {
        let g = petersen();
        let mut p = PartialColoring::from_colors(oracle_delta_coloring(&g, 3).unwrap().unwrap());
        p.unset(0);
        let done = complete_one_uncolored(&g, &p).unwrap();
        assert_eq!(done.token_moves, 0);
        assert_eq!(done.changed, vec![0]);
        assert!(verify(&g, &done.coloring, 3, None).is_ok());
    }

    #[test]
    fn prism_and_petersen_complete_every_node() {
        for g in [prism(), petersen()] {
            let rho = brooks_radius(g.n(), 3);
            for v in 0..g.n() {
                let p = hard_partial(&g, v);
                assert!(p.free_colors(&g, v, 3).is_empty());
                let done = complete_one_uncolored(&g, &p).unwrap();
                assert!(verify(&g, &done.coloring, 3, None).is_ok());
                assert!(done.reach <= rho);
                assert!(done.changed.len() > 1);
            }
        }
    }

    #[test]
    fn token_walk_to_low_degree_node() {
        // Removing one edge of the Petersen graph leaves two degree-2 nodes.
        let p = petersen();
        let g = Graph::from_edges(10, p.edges().filter(|&e| e != (0, 1))).unwrap();
        for v in 2..10 {
            let done = complete_one_uncolored(&g, &hard_partial(&g, v)).unwrap();
            assert!(verify(&g, &done.coloring, 3, None).is_ok());
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        let k4 = complete(4);
        let p = PartialColoring::from_options(vec![None, Some(1), Some(2), Some(3)]);
        assert_eq!(complete_one_uncolored(&k4, &p), Err(BrooksError::NotNice));
        let g = petersen();
        let two = PartialColoring::uncolored(10);
        assert!(matches!(
            complete_one_uncolored(&g, &two),
            Err(BrooksError::BadPartial(_))
        ));
    }
}
