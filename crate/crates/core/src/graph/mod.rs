//! Simple undirected graphs, BFS structure, block decomposition and the
//! structural classifiers used by the coloring algorithms (Gallai trees,
//! degree-choosable components, nice graphs).

mod bfs;
mod blocks;
mod dcc;

pub use bfs::{bfs_layers, BfsStructure};
pub use blocks::{
    block_decomposition, classify_block, classify_induced, BlockDecomposition, ComponentClass,
};
pub use dcc::{find_dcc_within_radius, induced_radius, is_dcc_set, DccSearch};

use std::collections::VecDeque;

use thiserror::Error;

pub type NodeId = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("node {node} out of range for graph with {n} nodes")]
    NodeOutOfRange { node: NodeId, n: usize },
    #[error("self-loop at node {0}")]
    SelfLoop(NodeId),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(NodeId, NodeId),
    #[error("node set is not a block of the graph")]
    NotABlock,
}

/// Immutable simple undirected graph on nodes `0..n` with sorted adjacency lists.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<NodeId>>,
    m: usize,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            m: 0,
        }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (NodeId, NodeId)>,
    {
        let mut adj = vec![Vec::new(); n];
        let mut m = 0;
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(GraphError::NodeOutOfRange { node: x, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
            m += 1;
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                let (a, b) = (u.min(w[0]), u.max(w[0]));
                return Err(GraphError::DuplicateEdge(a, b));
            }
        }
        Ok(Graph { adj, m })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn neighbors(&self, v: NodeId) -> &[NodeId] {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: NodeId) -> usize {
        self.adj[v].len()
    }

    /// Maximum degree, the Δ of the coloring problems.
    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    #[inline]
    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        let (a, b) = if self.adj[u].len() <= self.adj[v].len() {
            (u, v)
        } else {
            (v, u)
        };
        self.adj[a].binary_search(&b).is_ok()
    }

    /// Edges `(u, v)` with `u < v` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, list)| {
            list.iter()
                .copied()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    /// Induced subgraph on `nodes` (any order, no duplicates). Node `i` of the
    /// result corresponds to `nodes[i]`.
    pub fn induced(&self, nodes: &[NodeId]) -> Graph {
        let mut local = std::collections::HashMap::with_capacity(nodes.len());
        for (i, &v) in nodes.iter().enumerate() {
            local.insert(v, i);
        }
        let mut adj = vec![Vec::new(); nodes.len()];
        let mut m = 0;
        for (i, &v) in nodes.iter().enumerate() {
            for &w in &self.adj[v] {
                if let Some(&j) = local.get(&w) {
                    adj[i].push(j);
                    if j > i {
                        m += 1;
                    }
                }
            }
            adj[i].sort_unstable();
        }
        Graph { adj, m }
    }

    pub fn is_connected(&self) -> bool {
        if self.n() == 0 {
            return true;
        }
        self.distances_from(&[0], None).iter().all(Option::is_some)
    }

    /// Multi-source BFS distances, optionally truncated at `limit`.
    pub fn distances_from(&self, sources: &[NodeId], limit: Option<usize>) -> Vec<Option<usize>> {
        self.distances_within(sources, limit, |_| true)
    }

    /// Multi-source BFS restricted to nodes accepted by `allowed`. Sources are
    /// always included.
    pub fn distances_within<F>(
        &self,
        sources: &[NodeId],
        limit: Option<usize>,
        allowed: F,
    ) -> Vec<Option<usize>>
    where
        F: Fn(NodeId) -> bool,
    {
        let mut dist = vec![None; self.n()];
        let mut queue = VecDeque::new();
        for &s in sources {
            if dist[s].is_none() {
                dist[s] = Some(0);
                queue.push_back(s);
            }
        }
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap();
            if limit.is_some_and(|l| d >= l) {
                continue;
            }
            for &w in &self.adj[u] {
                if dist[w].is_none() && allowed(w) {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Nodes within distance `r` of `v`, sorted by (distance, id).
    pub fn ball(&self, v: NodeId, r: usize) -> Vec<NodeId> {
        let bfs = bfs_layers(self, v, r);
        bfs.levels.into_iter().flatten().collect()
    }

    /// Connected components (each sorted), ordered by smallest node.
    pub fn components(&self) -> Vec<Vec<NodeId>> {
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        for s in 0..self.n() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let u = comp[i];
                i += 1;
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_complete(&self) -> bool {
        let n = self.n();
        self.m == n * n.saturating_sub(1) / 2
    }
}

/// A connected graph is nice if it is neither a path, a cycle, nor a clique.
pub fn is_nice(g: &Graph) -> bool {
    let n = g.n();
    if n == 0 || !g.is_connected() || g.is_complete() {
        return false;
    }
    let delta = g.max_degree();
    let is_path = delta <= 2 && g.m() == n - 1;
    let is_cycle = delta == 2 && g.m() == n && (0..n).all(|v| g.degree(v) == 2);
    !(is_path || is_cycle)
}
