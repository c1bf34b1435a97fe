use serde::{Deserialize, Serialize};

use crate::graph::{Graph, NodeId};

/// Per-node optional color, colors numbered from 1.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PartialColoring(Vec<Option<u32>>);

impl PartialColoring {
    pub fn uncolored(n: usize) -> Self {
        PartialColoring(vec![None; n])
    }

    pub fn from_colors(colors: Vec<u32>) -> Self {
        PartialColoring(colors.into_iter().map(Some).collect())
    }

    pub fn from_options(colors: Vec<Option<u32>>) -> Self {
        PartialColoring(colors)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    #[inline]
    pub fn get(&self, v: NodeId) -> Option<u32> {
        self.0[v]
    }

    #[inline]
    pub fn set(&mut self, v: NodeId, c: u32) {
        self.0[v] = Some(c);
    }

    #[inline]
    pub fn unset(&mut self, v: NodeId) {
        self.0[v] = None;
    }

    pub fn is_colored(&self, v: NodeId) -> bool {
        self.0[v].is_some()
    }

    pub fn is_total(&self) -> bool {
        self.0.iter().all(Option::is_some)
    }

    pub fn uncolored_nodes(&self) -> Vec<NodeId> {
        (0..self.0.len()).filter(|&v| self.0[v].is_none()).collect()
    }

    pub fn as_slice(&self) -> &[Option<u32>] {
        &self.0
    }

    /// Colors in `1..=k` not used by any colored neighbor of `v`.
    pub fn free_colors(&self, g: &Graph, v: NodeId, k: u32) -> Vec<u32> {
        let mut used = vec![false; k as usize + 1];
        for &w in g.neighbors(v) {
            if let Some(c) = self.0[w] {
                if c <= k {
                    used[c as usize] = true;
                }
            }
        }
        (1..=k).filter(|&c| !used[c as usize]).collect()
    }

    /// Smallest free color in `1..=k`.
    pub fn first_free(&self, g: &Graph, v: NodeId, k: u32) -> Option<u32> {
        self.free_colors(g, v, k).into_iter().next()
    }

    /// True iff no edge has both endpoints colored alike.
    pub fn is_proper(&self, g: &Graph) -> bool {
        g.edges()
            .all(|(u, v)| self.0[u].is_none() || self.0[u] != self.0[v])
    }
}
