use std::collections::HashMap;

use super::{Graph, NodeId};

/// Breadth-first structure of the `r`-ball around a root.
///
/// `levels[t]` is the sorted set of nodes at distance `t`. Every non-root
/// node's parent is its smallest-id neighbor on the previous level, so the
/// tree is canonical regardless of traversal order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BfsStructure {
    pub root: NodeId,
    pub levels: Vec<Vec<NodeId>>,
    parent: HashMap<NodeId, NodeId>,
    depth: HashMap<NodeId, usize>,
    child_count: HashMap<NodeId, usize>,
}

impl BfsStructure {
    pub fn parent(&self, u: NodeId) -> Option<NodeId> {
        self.parent.get(&u).copied()
    }

    pub fn depth(&self, u: NodeId) -> Option<usize> {
        self.depth.get(&u).copied()
    }

    /// Number of tree children `d(u)`.
    pub fn child_count(&self, u: NodeId) -> usize {
        self.child_count.get(&u).copied().unwrap_or(0)
    }

    pub fn contains(&self, u: NodeId) -> bool {
        self.depth.contains_key(&u)
    }

    pub fn size(&self) -> usize {
        self.depth.len()
    }

    /// Tree path from `u` up to the root, inclusive.
    pub fn path_to_root(&self, u: NodeId) -> Vec<NodeId> {
        let mut path = vec![u];
        let mut cur = u;
        while let Some(p) = self.parent(cur) {
            path.push(p);
            cur = p;
        }
        path
    }

    /// The unique tree path `P_{u,w}`.
    pub fn tree_path(&self, u: NodeId, w: NodeId) -> Vec<NodeId> {
        let up = self.path_to_root(u);
        let wp = self.path_to_root(w);
        let mut i = up.len();
        let mut j = wp.len();
        while i > 0 && j > 0 && up[i - 1] == wp[j - 1] {
            i -= 1;
            j -= 1;
        }
        // up[i] == wp[j] is the lowest common ancestor.
        let mut path: Vec<NodeId> = up[..=i].to_vec();
        let mut tail: Vec<NodeId> = wp[..j].to_vec();
        tail.reverse();
        path.extend(tail);
        path
    }

    /// Neighbors of `u` (in `g`) lying on the level directly above `u`.
    pub fn upward_neighbors(&self, g: &Graph, u: NodeId) -> usize {
        match self.depth(u) {
            Some(0) | None => 0,
            Some(t) => g
                .neighbors(u)
                .iter()
                .filter(|&&w| self.depth(w) == Some(t - 1))
                .count(),
        }
    }
}

/// BFS levels `B_0..B_r` around `root`; depth is clipped at the eccentricity.
pub fn bfs_layers(g: &Graph, root: NodeId, r: usize) -> BfsStructure {
    let mut levels = vec![vec![root]];
    let mut parent = HashMap::new();
    let mut depth = HashMap::from([(root, 0)]);
    let mut child_count = HashMap::new();
    for t in 0..r {
        let mut next = Vec::new();
        for &u in &levels[t] {
            for &w in g.neighbors(u) {
                if let std::collections::hash_map::Entry::Vacant(e) = depth.entry(w) {
                    e.insert(t + 1);
                    parent.insert(w, u);
                    *child_count.entry(u).or_insert(0) += 1;
                    next.push(w);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        next.sort_unstable();
        levels.push(next);
    }
    BfsStructure {
        root,
        levels,
        parent,
        depth,
        child_count,
    }
}
