use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::graph::{Graph, NodeId};

use super::WorkbenchError;

const RESTARTS: usize = 200;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GallaiSpec {
    /// Number of blocks in the block tree.
    pub blocks: usize,
    /// Largest clique size (at least 2).
    pub max_clique: usize,
    /// Longest odd cycle (at least 3).
    pub max_cycle: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    Regular { n: usize, d: usize },
    Torus { w: usize, h: usize },
    Gallai(GallaiSpec),
    CliqueMinusEdge { n: usize },
    HighGirth { n: usize, d: usize, girth: usize },
    Path { n: usize },
    Cycle { n: usize },
    Complete { n: usize },
    Petersen,
}

pub fn generate(family: Family, seed: u64) -> Result<Graph, WorkbenchError> {
    match family {
        Family::Regular { n, d } => random_regular(n, d, seed),
        Family::Torus { w, h } => torus(w, h),
        Family::Gallai(spec) => gallai(spec, seed),
        Family::CliqueMinusEdge { n } => clique_minus_edge(n),
        Family::HighGirth { n, d, girth } => high_girth(n, d, girth, seed),
        Family::Path { n } => Ok(Graph::from_edges(n, (1..n).map(|i| (i - 1, i)))?),
        Family::Cycle { n } => {
            if n < 3 {
                return Err(WorkbenchError::InfeasibleFamily(format!(
                    "cycle needs n >= 3, got {n}"
                )));
            }
            Ok(Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))?)
        }
        Family::Complete { n } => Ok(complete(n)),
        Family::Petersen => {
            let mut e = Vec::new();
            for i in 0..5 {
                e.push((i, (i + 1) % 5));
                e.push((i, i + 5));
                e.push((5 + i, 5 + (i + 2) % 5));
            }
            Ok(Graph::from_edges(10, e)?)
        }
    }
}

fn complete(n: usize) -> Graph {
    Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
        .expect("complete graph is simple")
}

fn clique_minus_edge(n: usize) -> Result<Graph, WorkbenchError> {
    if n < 3 {
        return Err(WorkbenchError::InfeasibleFamily(format!(
            "clique minus an edge needs n >= 3, got {n}"
        )));
    }
    Ok(Graph::from_edges(
        n,
        complete(n).edges().filter(|&e| e != (0, 1)),
    )?)
}

fn torus(w: usize, h: usize) -> Result<Graph, WorkbenchError> {
    if w < 3 || h < 3 {
        return Err(WorkbenchError::InfeasibleFamily(format!(
            "torus needs both sides >= 3, got {w}x{h}"
        )));
    }
    let id = |x: usize, y: usize| (y % h) * w + (x % w);
    let mut e = Vec::with_capacity(2 * w * h);
    for y in 0..h {
        for x in 0..w {
            e.push((id(x, y), id(x + 1, y)));
            e.push((id(x, y), id(x, y + 1)));
        }
    }
    Ok(Graph::from_edges(w * h, e)?)
}

/// Pairing model with the Steger-Wormald rule: only pairs that keep the graph
/// simple are accepted; a dead end restarts the sample.
pub fn random_regular(n: usize, d: usize, seed: u64) -> Result<Graph, WorkbenchError> {
    if (n * d) % 2 == 1 || (n > 0 && d >= n) {
        return Err(WorkbenchError::InfeasibleFamily(format!(
            "no simple {d}-regular graph on {n} nodes"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    'attempt: for _ in 0..RESTARTS {
        let mut points: Vec<NodeId> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
        let mut adj: Vec<Vec<NodeId>> = vec![Vec::with_capacity(d); n];
        let mut edges = Vec::with_capacity(n * d / 2);
        while !points.is_empty() {
            let mut placed = false;
            for _ in 0..64 {
                let i = rng.random_range(0..points.len());
                let j = rng.random_range(0..points.len());
                let (u, v) = (points[i], points[j]);
                if i != j && u != v && !adj[u].contains(&v) {
                    let (hi, lo) = (i.max(j), i.min(j));
                    points.swap_remove(hi);
                    points.swap_remove(lo);
                    adj[u].push(v);
                    adj[v].push(u);
                    edges.push((u.min(v), u.max(v)));
                    placed = true;
                    break;
                }
            }
            if !placed {
                // Exhaustive check near the end of the sample.
                let mut found = None;
                'scan: for i in 0..points.len() {
                    for j in i + 1..points.len() {
                        let (u, v) = (points[i], points[j]);
                        if u != v && !adj[u].contains(&v) {
                            found = Some((i, j));
                            break 'scan;
                        }
                    }
                }
                let Some((i, j)) = found else {
                    continue 'attempt;
                };
                let (u, v) = (points[i], points[j]);
                points.swap_remove(j);
                points.swap_remove(i);
                adj[u].push(v);
                adj[v].push(u);
                edges.push((u.min(v), u.max(v)));
            }
        }
        return Ok(Graph::from_edges(n, edges)?);
    }
    Err(WorkbenchError::RejectionBudgetExceeded { attempts: RESTARTS })
}

/// An edge closing a cycle of length below `limit` in the BFS ball of `v`.
fn short_cycle_at(
    g: &Graph,
    v: NodeId,
    limit: usize,
    dist: &mut [usize],
    parent: &mut [NodeId],
    touched: &mut Vec<NodeId>,
) -> Option<(NodeId, NodeId)> {
    let depth = limit / 2;
    dist[v] = 0;
    parent[v] = v;
    touched.push(v);
    let mut head = 0;
    let mut result = None;
    while head < touched.len() {
        let u = touched[head];
        head += 1;
        if dist[u] >= depth {
            continue;
        }
        for &w in g.neighbors(u) {
            if w == parent[u] {
                continue;
            }
            if dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                parent[w] = u;
                touched.push(w);
            } else if dist[u] + dist[w] + 1 < limit {
                result = Some((u, w));
                break;
            }
        }
        if result.is_some() {
            break;
        }
    }
    for &u in touched.iter() {
        dist[u] = usize::MAX;
    }
    touched.clear();
    result
}

/// Girth (length of a shortest cycle); `None` for forests.
pub fn girth(g: &Graph) -> Option<usize> {
    let n = g.n();
    let mut best: Option<usize> = None;
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut queue = Vec::new();
    for s in 0..n {
        dist[s] = 0;
        parent[s] = s;
        queue.push(s);
        let mut head = 0;
        while head < queue.len() {
            let u = queue[head];
            head += 1;
            if best.is_some_and(|b| 2 * dist[u] + 1 >= b) {
                break;
            }
            for &w in g.neighbors(u) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    queue.push(w);
                } else if parent[u] != w {
                    let len = dist[u] + dist[w] + 1;
                    best = Some(best.map_or(len, |b| b.min(len)));
                }
            }
        }
        for &u in &queue {
            dist[u] = usize::MAX;
        }
        queue.clear();
    }
    best
}

/// Random regular graph with every cycle shorter than `min_girth` broken by
/// edge switches against random far-away edges.
pub fn high_girth(
    n: usize,
    d: usize,
    min_girth: usize,
    seed: u64,
) -> Result<Graph, WorkbenchError> {
    let g = random_regular(n, d, seed)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x6a09_e667_f3bc_c908);
    let mut adj: Vec<Vec<NodeId>> = (0..n).map(|v| g.neighbors(v).to_vec()).collect();
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut touched = Vec::new();
    let budget = 64;
    for _ in 0..budget {
        let cur = Graph::from_edges(n, edges_of(&adj))?;
        let mut bad: Vec<(NodeId, NodeId)> = Vec::new();
        for v in 0..n {
            if let Some(e) =
                short_cycle_at(&cur, v, min_girth, &mut dist, &mut parent, &mut touched)
            {
                bad.push((e.0.min(e.1), e.0.max(e.1)));
            }
        }
        bad.sort_unstable();
        bad.dedup();
        if bad.is_empty() {
            let out = Graph::from_edges(n, edges_of(&adj))?;
            if girth(&out).is_some_and(|gi| gi < min_girth) {
                break;
            }
            return Ok(out);
        }
        bad.shuffle(&mut rng);
        for (u, v) in bad {
            if !adj[u].contains(&v) {
                continue;
            }
            // New edges u-x and v-y must not close a short cycle on their own.
            let near_u = ball_of(&adj, u, min_girth.saturating_sub(2));
            let near_v = ball_of(&adj, v, min_girth.saturating_sub(2));
            for _ in 0..256 {
                let x = rng.random_range(0..n);
                if adj[x].is_empty() || near_u.contains(&x) {
                    continue;
                }
                let y = adj[x][rng.random_range(0..adj[x].len())];
                if near_v.contains(&y) || y == u || x == v {
                    continue;
                }
                // Replace u-v, x-y by u-x, v-y.
                remove(&mut adj, u, v);
                remove(&mut adj, x, y);
                adj[u].push(x);
                adj[x].push(u);
                adj[v].push(y);
                adj[y].push(v);
                break;
            }
        }
    }
    Err(WorkbenchError::RejectionBudgetExceeded { attempts: budget })
}

fn ball_of(adj: &[Vec<NodeId>], v: NodeId, r: usize) -> std::collections::HashSet<NodeId> {
    let mut seen = std::collections::HashSet::from([v]);
    let mut frontier = vec![v];
    for _ in 0..r {
        let mut next = Vec::new();
        for u in frontier {
            for &w in &adj[u] {
                if seen.insert(w) {
                    next.push(w);
                }
            }
        }
        frontier = next;
    }
    seen
}

fn remove(adj: &mut [Vec<NodeId>], a: NodeId, b: NodeId) {
    adj[a].retain(|&x| x != b);
    adj[b].retain(|&x| x != a);
}

fn edges_of(adj: &[Vec<NodeId>]) -> Vec<(NodeId, NodeId)> {
    let mut e: Vec<(NodeId, NodeId)> = adj
        .iter()
        .enumerate()
        .flat_map(|(u, l)| l.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
        .collect();
    e.sort_unstable();
    e
}

/// Tree of cliques and odd cycles glued at single nodes.
pub fn gallai(spec: GallaiSpec, seed: u64) -> Result<Graph, WorkbenchError> {
    if spec.blocks == 0 || spec.max_clique < 2 || spec.max_cycle < 3 {
        return Err(WorkbenchError::InfeasibleFamily(format!(
            "bad gallai spec {spec:?}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut n = 1usize;
    let mut edges = Vec::new();
    for _ in 0..spec.blocks {
        let at = rng.random_range(0..n);
        let cycle = rng.random_bool(0.5);
        let mut nodes = vec![at];
        if cycle {
            let lens: Vec<usize> = (3..=spec.max_cycle).step_by(2).collect();
            let len = lens[rng.random_range(0..lens.len())];
            nodes.extend(n..n + len - 1);
            n += len - 1;
            for i in 0..len {
                edges.push((nodes[i], nodes[(i + 1) % len]));
            }
        } else {
            let k = rng.random_range(2..=spec.max_clique);
            nodes.extend(n..n + k - 1);
            n += k - 1;
            for i in 0..k {
                for j in i + 1..k {
                    edges.push((nodes[i], nodes[j]));
                }
            }
        }
    }
    Ok(Graph::from_edges(n, edges)?)
}
