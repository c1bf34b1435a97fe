use rayon::prelude::*;

use crate::engine::{stream_key, PartialColoring};
use crate::graph::{Graph, NodeId};
use crate::oracle::list_color_backtrack;
use crate::primitives::{
    layered_color, ruling_set, LayerDecomposition, ListStrategy, RulingMethod, RulingSetParams,
};

use super::params::gamma;
use super::phase_one::{dedup_sets, search_all, virtual_graph};
use super::{RandError, RandParams};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SmallStats {
    pub components: usize,
    pub max_component: usize,
    /// Deepest D-layer over all components.
    pub max_depth: usize,
    /// Largest `γ (R + 1) + R` over all components.
    pub depth_bound: usize,
    pub rounds: usize,
}

struct ComponentResult {
    colors: Vec<(NodeId, u32)>,
    depth: usize,
    depth_bound: usize,
    rounds: usize,
}

fn color_component(
    g: &Graph,
    comp: &[NodeId],
    coloring: &PartialColoring,
    delta: usize,
    rp: &RandParams,
    seed: u64,
) -> Result<ComponentResult, RandError> {
    let mut ext: Vec<NodeId> = comp
        .iter()
        .flat_map(|&v| g.neighbors(v).iter().copied())
        .collect();
    ext.extend_from_slice(comp);
    ext.sort_unstable();
    ext.dedup();
    let loc = g.induced(&ext);
    let local = |v: NodeId| ext.binary_search(&v).expect("node in extended set");
    let mut in_c = vec![false; ext.len()];
    for &v in comp {
        in_c[local(v)] = true;
    }
    let mut fixed = PartialColoring::uncolored(ext.len());
    for (i, &v) in ext.iter().enumerate() {
        if !in_c[i] {
            if let Some(c) = coloring.get(v) {
                fixed.set(i, c);
            }
        }
    }
    let c_local: Vec<NodeId> = (0..ext.len()).filter(|&i| in_c[i]).collect();

    // Free nodes have spare degree or an uncolored neighbor outside C.
    let free: Vec<NodeId> = c_local
        .iter()
        .copied()
        .filter(|&i| {
            g.degree(ext[i]) < delta
                || loc
                    .neighbors(i)
                    .iter()
                    .any(|&j| !in_c[j] && !fixed.is_colored(j))
        })
        .collect();
    let mut sets: Vec<Vec<NodeId>> = free.iter().map(|&v| vec![v]).collect();
    sets.extend(dedup_sets(search_all(
        &loc,
        Some(&in_c),
        &c_local,
        rp.r_small,
    )));
    sets.sort_unstable();
    sets.dedup();
    if sets.is_empty() {
        return Err(RandError::EmptyBaseLayer {
            component_size: comp.len(),
        });
    }
    let virt = virtual_graph(&loc, &sets);
    let gam = gamma(virt.max_degree(), delta);
    let rs = ruling_set(
        &virt,
        RulingSetParams {
            alpha: 2,
            beta: gam,
            method: RulingMethod::Det2Beta,
        },
        seed,
    )?;
    let chosen: Vec<&Vec<NodeId>> = rs.members.iter().map(|&i| &sets[i]).collect();
    let mut base: Vec<NodeId> = chosen.iter().flat_map(|s| s.iter().copied()).collect();
    base.sort_unstable();

    let dec = LayerDecomposition::from_base(&loc, &base, Some(&in_c), None);
    let layered = layered_color(
        &loc,
        &dec,
        delta as u32,
        &fixed,
        ListStrategy::Randomized,
        seed,
    )?;
    let mut col = layered.coloring;
    for set in chosen {
        let lists: Vec<Vec<u32>> = set
            .iter()
            .map(|&u| col.free_colors(&loc, u, delta as u32))
            .collect();
        let sub = loc.induced(set);
        let colors = list_color_backtrack(&sub, &lists)
            .ok_or(RandError::BaseUncolorable { node: ext[set[0]] })?;
        for (&u, c) in set.iter().zip(colors) {
            col.set(u, c);
        }
    }
    let r = rp.r_small;
    let rounds = r + rs.rounds * (2 * r + 2) + dec.depth() + layered.rounds + r;
    Ok(ComponentResult {
        colors: c_local
            .iter()
            .map(|&i| (ext[i], col.get(i).expect("component fully colored")))
            .collect(),
        depth: dec.depth(),
        depth_bound: gam * (r + 1) + r,
        rounds,
    })
}

/// Colors the components of `g[leftover]` independently. Free nodes and DCCs
/// of radius at most `R` form a virtual graph; a `(2, γ)` ruling set of it
/// gives the base `D_0`, the layers around it are list-colored from the
/// outside in, and `D_0` is finished by brute force. Colors already present
/// outside `leftover` are respected.
pub fn color_small_components(
    g: &Graph,
    leftover: &[NodeId],
    coloring: &mut PartialColoring,
    delta: usize,
    rp: &RandParams,
    seed: u64,
) -> Result<SmallStats, RandError> {
    let comps: Vec<Vec<NodeId>> = {
        let mut inside = vec![false; g.n()];
        for &v in leftover {
            inside[v] = true;
        }
        let mut out = Vec::new();
        for &s in leftover {
            if !inside[s] {
                continue;
            }
            inside[s] = false;
            let mut comp = vec![s];
            let mut head = 0;
            while head < comp.len() {
                let u = comp[head];
                head += 1;
                for &w in g.neighbors(u) {
                    if inside[w] {
                        inside[w] = false;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    };
    let mut stats = SmallStats {
        components: comps.len(),
        ..Default::default()
    };
    stats.max_component = comps.iter().map(Vec::len).max().unwrap_or(0);
    if stats.max_component > rp.n_cap {
        return Err(RandError::ComponentTooLarge {
            size: stats.max_component,
            cap: rp.n_cap,
        });
    }
    let snapshot = &*coloring;
    let results: Vec<ComponentResult> = comps
        .par_iter()
        .map(|c| color_component(g, c, snapshot, delta, rp, stream_key(seed, c[0] as u64, 0)))
        .collect::<Result<_, _>>()?;
    for res in results {
        for (v, c) in res.colors {
            coloring.set(v, c);
        }
        stats.max_depth = stats.max_depth.max(res.depth);
        stats.depth_bound = stats.depth_bound.max(res.depth_bound);
        stats.rounds = stats.rounds.max(res.rounds);
    }
    Ok(stats)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::test_graphs::*;

    fn rp() -> RandParams {
        RandParams {
            beta: 6,
            s: 12,
            n_cap: 1000,
            r_small: 7,
        }
    }

    #[test]
    fn empty_leftover() {
        let g = petersen();
        let mut c = PartialColoring::uncolored(10);
        let s = color_small_components(&g, &[], &mut c, 3, &rp(), 0).unwrap();
        assert_eq!(s.components, 0);
        assert_eq!(c, PartialColoring::uncolored(10));
    }

    #[test]
    fn single_free_node() {
        let g = path(3);
        let mut c = PartialColoring::uncolored(3);
        let s = color_small_components(&g, &[1], &mut c, 2, &rp(), 0).unwrap();
        assert_eq!(s.components, 1);
        assert_eq!(s.max_depth, 0);
        assert!(c.is_colored(1) && !c.is_colored(0));
    }

    #[test]
    fn whole_petersen_as_one_component() {
        let g = petersen();
        let mut c = PartialColoring::uncolored(10);
        let s =
            color_small_components(&g, &(0..10).collect::<Vec<_>>(), &mut c, 3, &rp(), 5).unwrap();
        assert_eq!(s.max_component, 10);
        assert!(c.is_total() && c.is_proper(&g));
    }

    #[test]
    fn respects_color_one_context() {
        // Cube graph; nodes 0 and 7 (antipodal) fixed to color one.
        let e = [
            (0, 1),
            (0, 2),
            (0, 4),
            (1, 3),
            (1, 5),
            (2, 3),
            (2, 6),
            (3, 7),
            (4, 5),
            (4, 6),
            (5, 7),
            (6, 7),
        ];
        let g = Graph::from_edges(8, e).unwrap();
        let mut c = PartialColoring::uncolored(8);
        c.set(0, 1);
        c.set(7, 1);
        color_small_components(&g, &[1, 2, 3, 4, 5, 6], &mut c, 3, &rp(), 1).unwrap();
        assert!(c.is_total() && c.is_proper(&g));
        assert_eq!((c.get(0), c.get(7)), (Some(1), Some(1)));
    }

    #[test]
    fn too_large() {
        let g = petersen();
        let mut c = PartialColoring::uncolored(10);
        let small = RandParams { n_cap: 5, ..rp() };
        let err = color_small_components(&g, &(0..10).collect::<Vec<_>>(), &mut c, 3, &small, 0)
            .unwrap_err();
        assert_eq!(err, RandError::ComponentTooLarge { size: 10, cap: 5 });
    }
}
