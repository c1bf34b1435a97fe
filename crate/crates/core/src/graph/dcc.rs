//! Search for small degree-choosable components (DCCs).
//!
//! Candidates are grown from the non-tree edges of the canonical BFS tree of
//! the ball, level by level: the fundamental cycle of each non-tree edge, and
//! the union of two fundamental cycles sharing at least two nodes. Every
//! 2-connected graph that is neither a clique nor an odd cycle contains an
//! induced even cycle with at most one chord, which is exactly what these
//! candidates cover near the root. At the first level where some candidate
//! induces a DCC of radius at most `r`, the lexicographically smallest sorted
//! node set among the qualifying candidates is returned.

use super::blocks::classify_local;
use super::{ComponentClass, Graph, NodeId};

/// Ball size above which pairs of cycles are no longer combined.
pub const PAIR_SEARCH_CAP: usize = 4096;

const UNSEEN: u32 = u32::MAX;

/// Reusable scratch space for repeated DCC searches on one graph.
pub struct DccSearch<'g> {
    g: &'g Graph,
    allowed: Option<&'g [bool]>,
    depth: Vec<u32>,
    parent: Vec<u32>,
    /// Indices of the found cycles through each node.
    containing: Vec<Vec<u32>>,
    touched: Vec<NodeId>,
}

impl<'g> DccSearch<'g> {
    pub fn new(g: &'g Graph) -> Self {
        DccSearch {
            g,
            allowed: None,
            depth: vec![UNSEEN; g.n()],
            parent: vec![UNSEEN; g.n()],
            containing: vec![Vec::new(); g.n()],
            touched: Vec::new(),
        }
    }

    /// Search restricted to the subgraph induced by `allowed`.
    pub fn within(g: &'g Graph, allowed: &'g [bool]) -> Self {
        let mut s = Self::new(g);
        s.allowed = Some(allowed);
        s
    }

    #[inline]
    fn ok(&self, v: NodeId) -> bool {
        self.allowed.is_none_or(|a| a[v])
    }

    fn reset(&mut self) {
        for &v in &self.touched {
            self.depth[v] = UNSEEN;
            self.parent[v] = UNSEEN;
            self.containing[v].clear();
        }
        self.touched.clear();
    }

    fn fundamental_cycle(&self, x: NodeId, y: NodeId) -> Vec<NodeId> {
        let (mut a, mut b) = (x, y);
        let mut nodes = vec![a, b];
        while self.depth[a] > self.depth[b] {
            a = self.parent[a] as NodeId;
            nodes.push(a);
        }
        while self.depth[b] > self.depth[a] {
            b = self.parent[b] as NodeId;
            nodes.push(b);
        }
        while a != b {
            a = self.parent[a] as NodeId;
            b = self.parent[b] as NodeId;
            nodes.push(a);
            nodes.push(b);
        }
        nodes.sort_unstable();
        nodes.dedup();
        nodes
    }

    /// Finds a DCC of radius at most `r` inside the `r`-ball of `v`.
    pub fn search(&mut self, v: NodeId, r: usize) -> Option<Vec<NodeId>> {
        let result = self.search_inner(v, r);
        self.reset();
        result
    }

    fn search_inner(&mut self, v: NodeId, r: usize) -> Option<Vec<NodeId>> {
        if !self.ok(v) {
            return None;
        }
        let g = self.g;
        self.depth[v] = 0;
        self.touched.push(v);
        let mut level = vec![v];
        let mut ball_size = 1usize;
        let mut cycles: Vec<Vec<NodeId>> = Vec::new();
        let mut shared: Vec<u32> = Vec::new();

        for d in 0..=r {
            let mut next = Vec::new();
            let mut new_edges = Vec::new();
            for &u in &level {
                for &w in g.neighbors(u) {
                    if !self.ok(w) {
                        continue;
                    }
                    let dw = self.depth[w];
                    if dw == UNSEEN {
                        if d < r {
                            self.depth[w] = (d + 1) as u32;
                            self.parent[w] = u as u32;
                            self.touched.push(w);
                            next.push(w);
                        }
                    } else if d > 0 && dw as usize == d - 1 && self.parent[u] as NodeId != w {
                        new_edges.push((w, u));
                    } else if dw as usize == d && u < w {
                        new_edges.push((u, w));
                    }
                }
            }

            if !new_edges.is_empty() {
                let first_new = cycles.len();
                for &(x, y) in &new_edges {
                    let c = self.fundamental_cycle(x, y);
                    for &z in &c {
                        self.containing[z].push(cycles.len() as u32);
                    }
                    cycles.push(c);
                }
                let mut candidates: Vec<Vec<NodeId>> = cycles[first_new..].to_vec();
                if ball_size <= PAIR_SEARCH_CAP {
                    for e in first_new..cycles.len() {
                        shared.clear();
                        shared.resize(e, 0);
                        for &z in &cycles[e] {
                            for &f in &self.containing[z] {
                                if (f as usize) < e {
                                    shared[f as usize] += 1;
                                }
                            }
                        }
                        for (f, &count) in shared.iter().enumerate() {
                            if count >= 2 {
                                let mut u: Vec<NodeId> =
                                    Vec::with_capacity(cycles[e].len() + cycles[f].len());
                                u.extend_from_slice(&cycles[e]);
                                u.extend_from_slice(&cycles[f]);
                                u.sort_unstable();
                                u.dedup();
                                candidates.push(u);
                            }
                        }
                    }
                }
                // Smallest qualifying set; the minimum usually qualifies, so
                // this avoids sorting all candidates.
                while let Some(i) =
                    (0..candidates.len()).min_by(|&a, &b| candidates[a].cmp(&candidates[b]))
                {
                    let c = candidates.swap_remove(i);
                    if qualifies(g, &c, r) {
                        return Some(c);
                    }
                    candidates.retain(|x| *x != c);
                }
            }

            if next.is_empty() {
                break;
            }
            next.sort_unstable();
            ball_size += next.len();
            level = next;
        }
        None
    }
}

/// Induced subgraph on a sorted node set, built by binary search.
fn local_graph(g: &Graph, set: &[NodeId]) -> Graph {
    let mut edges = Vec::new();
    for (i, &x) in set.iter().enumerate() {
        for &w in g.neighbors(x) {
            if w > x {
                if let Ok(j) = set.binary_search(&w) {
                    edges.push((i, j));
                }
            }
        }
    }
    Graph::from_edges(set.len(), edges).expect("induced subgraph of a simple graph is simple")
}

fn local_radius(h: &Graph) -> Option<usize> {
    let mut best: Option<usize> = None;
    for s in 0..h.n() {
        let dist = h.distances_from(&[s], None);
        let ecc = dist
            .iter()
            .try_fold(0usize, |acc, d| d.map(|d| acc.max(d)))?;
        best = Some(best.map_or(ecc, |b| b.min(ecc)));
    }
    best
}

fn qualifies(g: &Graph, set: &[NodeId], r: usize) -> bool {
    let h = local_graph(g, set);
    // A connected graph on k nodes has radius at most k / 2.
    classify_local(&h) == Some(ComponentClass::Dcc)
        && (set.len() <= 2 * r + 1 || local_radius(&h).is_some_and(|rad| rad <= r))
}

/// True iff the induced subgraph on `set` is 2-connected and neither a clique
/// nor an odd cycle.
pub fn is_dcc_set(g: &Graph, set: &[NodeId]) -> bool {
    let mut sorted = set.to_vec();
    sorted.sort_unstable();
    classify_local(&local_graph(g, &sorted)) == Some(ComponentClass::Dcc)
}

/// Radius (minimum eccentricity) of the induced subgraph; `None` if disconnected.
pub fn induced_radius(g: &Graph, set: &[NodeId]) -> Option<usize> {
    let mut sorted = set.to_vec();
    sorted.sort_unstable();
    local_radius(&local_graph(g, &sorted))
}

/// One-shot DCC search around `v` with radius `r`.
pub fn find_dcc_within_radius(g: &Graph, v: NodeId, r: usize) -> Option<Vec<NodeId>> {
    DccSearch::new(g).search(v, r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::test_graphs::*;

    #[test]
    fn clique_has_no_dcc() {
        let g = complete(4);
        for v in 0..4 {
            assert_eq!(find_dcc_within_radius(&g, v, 1), None);
        }
    }

    #[test]
    fn four_cycle_is_its_own_dcc() {
        let g = cycle(4);
        for v in 0..4 {
            assert_eq!(find_dcc_within_radius(&g, v, 2), Some(vec![0, 1, 2, 3]));
        }
    }

    #[test]
    fn odd_cycle_is_not_a_dcc() {
        assert_eq!(find_dcc_within_radius(&cycle(7), 0, 5), None);
    }

    #[test]
    fn petersen_has_dcc_at_radius_three() {
        let g = petersen();
        for v in 0..10 {
            let s = find_dcc_within_radius(&g, v, 3).expect("petersen contains 6-cycles");
            assert!(is_dcc_set(&g, &s));
            assert!(induced_radius(&g, &s).unwrap() <= 3);
            let ball = g.ball(v, 3);
            assert!(s.iter().all(|x| ball.contains(x)));
        }
        // girth 5, so no DCC fits in radius 1.
        assert_eq!(find_dcc_within_radius(&g, 0, 1), None);
    }

    #[test]
    fn diamond_found_at_radius_one() {
        // K4 minus the edge 1-3: the two triangles only combine as a pair.
        let g = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (2, 3)]).unwrap();
        assert_eq!(find_dcc_within_radius(&g, 0, 1), Some(vec![0, 1, 2, 3]));
    }

    #[test]
    fn restricted_search_ignores_masked_nodes() {
        let g = cycle(4);
        let allowed = [true, true, true, false];
        assert_eq!(DccSearch::within(&g, &allowed).search(0, 2), None);
    }

    #[test]
    fn scratch_is_reusable() {
        let g = petersen();
        let mut s = DccSearch::new(&g);
        let a = s.search(0, 3);
        let b = s.search(0, 3);
        assert_eq!(a, b);
        assert_eq!(s.search(3, 1), None);
    }
}
