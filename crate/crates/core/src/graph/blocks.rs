use serde::{Deserialize, Serialize};

use super::{Graph, GraphError, NodeId};

/// Maximal 2-connected components (bridges appear as 2-node blocks) and the
/// cut vertices separating them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockDecomposition {
    /// Sorted node sets, ordered by smallest contained node (then lexicographically).
    pub blocks: Vec<Vec<NodeId>>,
    pub cut_vertices: Vec<NodeId>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ComponentClass {
    Clique,
    OddCycle,
    Dcc,
    BridgeEdge,
}

/// Biconnected components via an iterative Hopcroft–Tarjan edge-stack DFS.
pub fn block_decomposition(g: &Graph) -> BlockDecomposition {
    let n = g.n();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut is_cut = vec![false; n];
    let mut blocks: Vec<Vec<NodeId>> = Vec::new();
    let mut edge_stack: Vec<(NodeId, NodeId)> = Vec::new();
    let mut timer = 0;

    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        let mut root_children = 0;
        // (node, parent, next neighbor index)
        let mut stack: Vec<(NodeId, Option<NodeId>, usize)> = vec![(root, None, 0)];
        while let Some(frame) = stack.last_mut() {
            let (u, parent, idx) = *frame;
            if idx < g.degree(u) {
                frame.2 += 1;
                let w = g.neighbors(u)[idx];
                if Some(w) == parent {
                    continue;
                }
                if disc[w] == usize::MAX {
                    edge_stack.push((u, w));
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    if u == root {
                        root_children += 1;
                    }
                    stack.push((w, Some(u), 0));
                } else if disc[w] < disc[u] {
                    edge_stack.push((u, w));
                    low[u] = low[u].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(p) = parent {
                    low[p] = low[p].min(low[u]);
                    if low[u] >= disc[p] {
                        if p != root {
                            is_cut[p] = true;
                        }
                        let mut block = Vec::new();
                        while let Some((a, b)) = edge_stack.pop() {
                            block.push(a);
                            block.push(b);
                            if (a, b) == (p, u) {
                                break;
                            }
                        }
                        block.sort_unstable();
                        block.dedup();
                        blocks.push(block);
                    }
                }
            }
        }
        if root_children > 1 {
            is_cut[root] = true;
        }
    }
    blocks.sort();
    let cut_vertices = (0..n).filter(|&v| is_cut[v]).collect();
    BlockDecomposition {
        blocks,
        cut_vertices,
    }
}

fn is_two_connected(h: &Graph) -> bool {
    if h.n() < 3 || !h.is_connected() {
        return false;
    }
    let bd = block_decomposition(h);
    bd.blocks.len() == 1 && bd.cut_vertices.is_empty()
}

/// Class of the induced subgraph on `set`, or `None` if it is neither a
/// single edge nor 2-connected.
pub fn classify_induced(g: &Graph, set: &[NodeId]) -> Option<ComponentClass> {
    let h = g.induced(set);
    classify_local(&h)
}

pub(crate) fn classify_local(h: &Graph) -> Option<ComponentClass> {
    let k = h.n();
    if k == 2 {
        return (h.m() == 1).then_some(ComponentClass::BridgeEdge);
    }
    if !is_two_connected(h) {
        return None;
    }
    if h.is_complete() {
        Some(ComponentClass::Clique)
    } else if k % 2 == 1 && (0..k).all(|v| h.degree(v) == 2) {
        Some(ComponentClass::OddCycle)
    } else {
        Some(ComponentClass::Dcc)
    }
}

/// Classifies a block of `g`; rejects node sets that are not blocks.
pub fn classify_block(g: &Graph, block: &[NodeId]) -> Result<ComponentClass, GraphError> {
    let mut sorted = block.to_vec();
    sorted.sort_unstable();
    if sorted.iter().any(|&v| v >= g.n()) {
        return Err(GraphError::NotABlock);
    }
    let bd = block_decomposition(g);
    if bd.blocks.binary_search(&sorted).is_err() {
        return Err(GraphError::NotABlock);
    }
    classify_induced(g, &sorted).ok_or(GraphError::NotABlock)
}
