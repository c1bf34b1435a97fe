//! Brute-force ground truth and coloring verification.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::engine::PartialColoring;
use crate::graph::{Graph, NodeId};

pub const DELTA_COLORING_CAP: usize = 24;
pub const CHOOSABLE_NODE_CAP: usize = 6;
pub const CHOOSABLE_UNIVERSE_CAP: usize = 6;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("instance too large for exhaustive search: {size} > {cap}")]
    TooLarge { size: usize, cap: usize },
}

/// Lexicographically first proper `k`-coloring (ascending node id, ascending
/// color), or `None`. Refuses graphs above [`DELTA_COLORING_CAP`] nodes.
pub fn oracle_delta_coloring(g: &Graph, k: u32) -> Result<Option<Vec<u32>>, OracleError> {
    oracle_delta_coloring_capped(g, k, DELTA_COLORING_CAP)
}

pub fn oracle_delta_coloring_capped(
    g: &Graph,
    k: u32,
    cap: usize,
) -> Result<Option<Vec<u32>>, OracleError> {
    if g.n() > cap {
        return Err(OracleError::TooLarge { size: g.n(), cap });
    }
    if k > 63 {
        return Err(OracleError::TooLarge {
            size: k as usize,
            cap: 63,
        });
    }
    let full: u64 = if k == 0 { 0 } else { ((1u64 << k) - 1) << 1 };
    let mut domains = vec![full; g.n()];
    let mut colors = vec![0u32; g.n()];
    Ok(lex_first(g, 0, &mut domains, &mut colors).then_some(colors))
}

fn lex_first(g: &Graph, v: NodeId, domains: &mut [u64], colors: &mut [u32]) -> bool {
    if v == g.n() {
        return true;
    }
    let mut dom = domains[v];
    while dom != 0 {
        let c = dom.trailing_zeros();
        dom &= dom - 1;
        let bit = 1u64 << c;
        let mut touched = Vec::new();
        let mut dead = false;
        for &w in g.neighbors(v) {
            if w > v && domains[w] & bit != 0 {
                domains[w] &= !bit;
                touched.push(w);
                if domains[w] == 0 {
                    dead = true;
                }
            }
        }
        if !dead {
            colors[v] = c;
            if lex_first(g, v + 1, domains, colors) {
                return true;
            }
        }
        for w in touched {
            domains[w] |= bit;
        }
    }
    false
}

/// Proper coloring with `c(v) ∈ lists[v]`, found by backtracking with
/// minimum-remaining-values ordering (ties by node id). Deterministic.
pub fn list_color_backtrack(g: &Graph, lists: &[Vec<u32>]) -> Option<Vec<u32>> {
    let n = g.n();
    let mut domains: Vec<Vec<u32>> = lists
        .iter()
        .map(|l| {
            let mut l = l.clone();
            l.sort_unstable();
            l.dedup();
            l
        })
        .collect();
    let mut colors = vec![0u32; n];
    let mut assigned = vec![false; n];
    mrv_search(g, &mut domains, &mut colors, &mut assigned, n).then_some(colors)
}

fn mrv_search(
    g: &Graph,
    domains: &mut [Vec<u32>],
    colors: &mut [u32],
    assigned: &mut [bool],
    left: usize,
) -> bool {
    if left == 0 {
        return true;
    }
    let v = (0..g.n())
        .filter(|&v| !assigned[v])
        .min_by_key(|&v| (domains[v].len(), v))
        .expect("unassigned node");
    let options = domains[v].clone();
    assigned[v] = true;
    for c in options {
        let mut removed = Vec::new();
        let mut dead = false;
        for &w in g.neighbors(v) {
            if !assigned[w] {
                if let Ok(i) = domains[w].binary_search(&c) {
                    domains[w].remove(i);
                    removed.push(w);
                    dead |= domains[w].is_empty();
                }
            }
        }
        if !dead {
            colors[v] = c;
            if mrv_search(g, domains, colors, assigned, left - 1) {
                return true;
            }
        }
        for w in removed {
            let d = &mut domains[w];
            let i = d.binary_search(&c).unwrap_err();
            d.insert(i, c);
        }
    }
    assigned[v] = false;
    false
}

/// Exhaustive degree-choosability test: every assignment of lists with
/// `|L(v)| = deg(v)` drawn from `{1..universe}` admits a proper list coloring.
pub fn oracle_degree_choosable(g: &Graph, universe: usize) -> Result<bool, OracleError> {
    let n = g.n();
    if n > CHOOSABLE_NODE_CAP {
        return Err(OracleError::TooLarge {
            size: n,
            cap: CHOOSABLE_NODE_CAP,
        });
    }
    if universe > CHOOSABLE_UNIVERSE_CAP {
        return Err(OracleError::TooLarge {
            size: universe,
            cap: CHOOSABLE_UNIVERSE_CAP,
        });
    }
    if n == 0 {
        return Ok(true);
    }
    let masks: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0, |m, &w| m | 1 << w))
        .collect();
    let options: Vec<Vec<u8>> = (0..n)
        .map(|v| {
            (0u8..1 << universe)
                .filter(|s| s.count_ones() as usize == g.degree(v))
                .collect()
        })
        .collect();
    if options.iter().any(Vec::is_empty) {
        // Some degree exceeds the universe; no assignment exists.
        return Ok(true);
    }
    // Permuting colors preserves colorability, so node 0 may take the first
    // `deg(0)` colors.
    let mut lists = vec![0u8; n];
    lists[0] = options[0][0];
    Ok(all_assignments_colorable(&masks, &options, &mut lists, 1))
}

fn all_assignments_colorable(
    masks: &[u32],
    options: &[Vec<u8>],
    lists: &mut [u8],
    v: usize,
) -> bool {
    if v == lists.len() {
        let mut colors = vec![0u8; lists.len()];
        return bitmask_colorable(masks, lists, &mut colors, 0);
    }
    for &s in &options[v] {
        lists[v] = s;
        if !all_assignments_colorable(masks, options, lists, v + 1) {
            return false;
        }
    }
    true
}

fn bitmask_colorable(masks: &[u32], lists: &[u8], colors: &mut [u8], v: usize) -> bool {
    if v == lists.len() {
        return true;
    }
    let mut avail = lists[v];
    for w in 0..v {
        if masks[v] >> w & 1 == 1 {
            avail &= !colors[w];
        }
    }
    while avail != 0 {
        let bit = avail & avail.wrapping_neg();
        avail &= avail - 1;
        colors[v] = bit;
        if bitmask_colorable(masks, lists, colors, v + 1) {
            return true;
        }
    }
    false
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Violation {
    Uncolored { node: NodeId },
    Monochromatic { u: NodeId, v: NodeId, color: u32 },
    OutOfPalette { node: NodeId, color: u32 },
    NotInList { node: NodeId, color: u32 },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::Uncolored { node } => write!(f, "node {node} is uncolored"),
            Violation::Monochromatic { u, v, color } => {
                write!(f, "edge {u}-{v} has both ends colored {color}")
            }
            Violation::OutOfPalette { node, color } => {
                write!(f, "node {node} has color {color} outside the palette")
            }
            Violation::NotInList { node, color } => {
                write!(f, "node {node} has color {color} outside its list")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Ok,
    Invalid(Vec<Violation>),
}

impl Verdict {
    pub fn is_ok(&self) -> bool {
        matches!(self, Verdict::Ok)
    }

    pub fn violations(&self) -> &[Violation] {
        match self {
            Verdict::Ok => &[],
            Verdict::Invalid(v) => v,
        }
    }
}

/// Checks totality, properness, palette `{1..k}` and optional lists. All
/// violations are reported, nodes before edges.
pub fn verify(
    g: &Graph,
    coloring: &PartialColoring,
    k: u32,
    lists: Option<&[Vec<u32>]>,
) -> Verdict {
    let mut out = Vec::new();
    for v in 0..g.n() {
        match coloring.get(v) {
            None => out.push(Violation::Uncolored { node: v }),
            Some(c) => {
                if c == 0 || c > k {
                    out.push(Violation::OutOfPalette { node: v, color: c });
                }
                if let Some(l) = lists {
                    if !l[v].contains(&c) {
                        out.push(Violation::NotInList { node: v, color: c });
                    }
                }
            }
        }
    }
    for (u, v) in g.edges() {
        if let (Some(a), Some(b)) = (coloring.get(u), coloring.get(v)) {
            if a == b {
                out.push(Violation::Monochromatic { u, v, color: a });
            }
        }
    }
    if out.is_empty() {
        Verdict::Ok
    } else {
        Verdict::Invalid(out)
    }
}
