use std::collections::BTreeSet;

use proptest::prelude::*;

use deltacol::graph::{
    bfs_layers, block_decomposition, classify_block, find_dcc_within_radius, ComponentClass,
};
use deltacol::oracle::{verify, Violation};
use deltacol::primitives::{
    layered_color, list_color, ruling_set, LayerDecomposition, ListAssignment, ListStrategy,
    RulingMethod, RulingSetParams,
};
use deltacol::randcolor::{marking_process, MarkingParams};
use deltacol::workbench::{
    parse_coloring, parse_graph, parse_partial_coloring, random_regular, write_coloring,
    write_graph,
};
use deltacol::{Graph, PartialColoring};

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[k] {
                        edges.push((u, v));
                    }
                    k += 1;
                }
            }
            Graph::from_edges(n, edges).unwrap()
        })
    })
}

fn arb_connected(max_n: usize) -> impl Strategy<Value = Graph> {
    arb_graph(max_n).prop_filter("connected", |g| g.n() >= 2 && g.is_connected())
}

/// All-pairs distances by Floyd-Warshall.
fn apsp(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.n();
    let inf = usize::MAX / 4;
    let mut d = vec![vec![inf; n]; n];
    for v in 0..n {
        d[v][v] = 0;
        for &w in g.neighbors(v) {
            d[v][w] = 1;
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    d
}

fn connected_without(g: &Graph, set: &[usize], skip: Option<usize>) -> bool {
    let keep: Vec<usize> = set.iter().copied().filter(|&v| Some(v) != skip).collect();
    if keep.is_empty() {
        return true;
    }
    let mut seen = BTreeSet::from([keep[0]]);
    let mut stack = vec![keep[0]];
    while let Some(u) = stack.pop() {
        for &w in g.neighbors(u) {
            if keep.contains(&w) && seen.insert(w) {
                stack.push(w);
            }
        }
    }
    seen.len() == keep.len()
}

fn brute_class(g: &Graph, set: &[usize]) -> ComponentClass {
    let k = set.len();
    let inner = |v: usize| set.iter().filter(|&&w| g.has_edge(v, w)).count();
    if k == 2 {
        ComponentClass::BridgeEdge
    } else if set.iter().all(|&v| inner(v) == k - 1) {
        ComponentClass::Clique
    } else if k % 2 == 1 && set.iter().all(|&v| inner(v) == 2) {
        ComponentClass::OddCycle
    } else {
        ComponentClass::Dcc
    }
}

fn brute_is_dcc(g: &Graph, set: &[usize]) -> bool {
    set.len() >= 3
        && connected_without(g, set, None)
        && set.iter().all(|&v| connected_without(g, set, Some(v)))
        && brute_class(g, set) == ComponentClass::Dcc
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn blocks_match_brute_force(g in arb_graph(9)) {
        let dec = block_decomposition(&g);
        let mut covered = BTreeSet::new();
        for b in &dec.blocks {
            prop_assert!(b.len() >= 2);
            prop_assert!(connected_without(&g, b, None));
            if b.len() > 2 {
                for &v in b {
                    prop_assert!(connected_without(&g, b, Some(v)));
                }
            }
            prop_assert_eq!(classify_block(&g, b).unwrap(), brute_class(&g, b));
            for (i, &u) in b.iter().enumerate() {
                for &v in &b[i + 1..] {
                    if g.has_edge(u, v) {
                        prop_assert!(covered.insert((u, v)), "edge in two blocks");
                    }
                }
            }
        }
        prop_assert_eq!(covered.len(), g.m());
        let comps = g.components().len();
        for v in 0..g.n() {
            let rest: Vec<usize> = (0..g.n()).filter(|&u| u != v).collect();
            let splits = g.induced(&rest).components().len() > comps - usize::from(g.degree(v) == 0);
            prop_assert_eq!(dec.cut_vertices.contains(&v), splits, "node {}", v);
        }
    }

    #[test]
    fn dcc_search_returns_certified_sets(g in arb_graph(10), r in 1usize..4) {
        let d = apsp(&g);
        for v in 0..g.n() {
            if let Some(set) = find_dcc_within_radius(&g, v, r) {
                prop_assert!(brute_is_dcc(&g, &set), "{:?}", set);
                prop_assert!(set.iter().all(|&u| d[v][u] <= r));
                let local = g.induced(&set);
                let ld = apsp(&local);
                let rad = (0..set.len()).map(|i| *ld[i].iter().max().unwrap()).min().unwrap();
                prop_assert!(rad <= r);
            }
        }
    }

    #[test]
    fn bfs_uniqueness_on_dcc_free_balls(g in arb_graph(10), r in 1usize..4) {
        let d = apsp(&g);
        for v in 0..g.n() {
            let bfs = bfs_layers(&g, v, r);
            for (t, level) in bfs.levels.iter().enumerate() {
                for &u in level {
                    prop_assert_eq!(d[v][u], t);
                }
            }
            if find_dcc_within_radius(&g, v, r).is_some() {
                continue;
            }
            for t in 1..bfs.levels.len() {
                for &u in &bfs.levels[t] {
                    let up = g.neighbors(u).iter().filter(|&&w| d[v][w] + 1 == t).count();
                    prop_assert_eq!(up, 1, "node {} level {} root {}", u, t, v);
                }
            }
        }
    }

    #[test]
    fn neighborhood_components_are_cliques(g in arb_graph(10)) {
        for v in 0..g.n() {
            if find_dcc_within_radius(&g, v, 1).is_some() {
                continue;
            }
            let nb = g.neighbors(v).to_vec();
            let h = g.induced(&nb);
            for comp in h.components() {
                for (i, &a) in comp.iter().enumerate() {
                    for &b in &comp[i + 1..] {
                        prop_assert!(h.has_edge(a, b));
                    }
                }
            }
        }
    }

    #[test]
    fn expansion_on_dcc_free_regular_balls(n in 40usize..200, d in 3usize..6, seed in 0u64..1000) {
        prop_assume!(n * d % 2 == 0);
        let g = random_regular(n, d, seed).unwrap();
        for v in (0..n).step_by(7) {
            for r in [2usize, 4] {
                if find_dcc_within_radius(&g, v, r).is_none() {
                    let size = g.ball(v, r).len();
                    prop_assert!(size >= (d - 1).pow(r as u32 / 2), "v {} r {} size {}", v, r, size);
                }
            }
        }
    }

    #[test]
    fn ruling_sets_hold_exactly(g in arb_graph(14), seed in 0u64..50, which in 0usize..3, beta in 1usize..5) {
        let (method, alpha) = match which {
            0 => (RulingMethod::Det2Beta, 2),
            1 => (RulingMethod::DetK, 3),
            _ => (RulingMethod::RandLogLog, 2),
        };
        let rs = ruling_set(&g, RulingSetParams { alpha, beta, method }, seed).unwrap();
        let d = apsp(&g);
        for (i, &a) in rs.members.iter().enumerate() {
            for &b in &rs.members[i + 1..] {
                prop_assert!(d[a][b] >= alpha);
            }
        }
        let cover = (0..g.n())
            .map(|v| rs.members.iter().map(|&m| d[v][m]).min().unwrap_or(usize::MAX))
            .max()
            .unwrap_or(0);
        prop_assert_eq!(cover, rs.measured_beta);
    }

    #[test]
    fn list_coloring_respects_lists(g in arb_graph(14), seed in 0u64..100, randomized: bool) {
        let mut rng_state = seed.wrapping_mul(0x9e37_79b9_7f4a_7c15) | 1;
        let mut next = || {
            rng_state ^= rng_state << 13;
            rng_state ^= rng_state >> 7;
            rng_state ^= rng_state << 17;
            rng_state
        };
        let lists: Vec<Vec<u32>> = (0..g.n())
            .map(|v| {
                let mut l = BTreeSet::new();
                while l.len() <= g.degree(v) {
                    l.insert(1 + (next() % 20) as u32);
                }
                l.into_iter().collect()
            })
            .collect();
        let base: Vec<u32> = (1..=g.n() as u32).collect();
        let strategy = if randomized {
            ListStrategy::Randomized
        } else {
            ListStrategy::ClassSweep { base: &base }
        };
        let out = list_color(&g, &ListAssignment::new(lists.clone()), strategy, seed).unwrap();
        for v in 0..g.n() {
            prop_assert!(lists[v].contains(&out.colors[v]));
        }
        for (u, v) in g.edges() {
            prop_assert_ne!(out.colors[u], out.colors[v]);
        }
    }

    #[test]
    fn layered_color_keeps_fixed_nodes(
        g in arb_connected(14),
        base_mask in any::<u16>(),
        fixed_mask in any::<u16>(),
        seed in 0u64..100,
    ) {
        let n = g.n();
        let mut base: Vec<usize> = (0..n).filter(|&v| base_mask >> v & 1 == 1).collect();
        if base.is_empty() {
            base.push(0);
        }
        let palette = g.max_degree() as u32 + 1;
        let mut fixed = PartialColoring::uncolored(n);
        for v in (0..n).filter(|&v| fixed_mask >> v & 1 == 1) {
            let c = fixed.first_free(&g, v, palette).unwrap();
            fixed.set(v, c);
        }
        let dec = LayerDecomposition::from_base(&g, &base, None, None);
        let out = layered_color(&g, &dec, palette, &fixed, ListStrategy::Randomized, seed).unwrap();
        for v in 0..n {
            if let Some(c) = fixed.get(v) {
                prop_assert_eq!(out.coloring.get(v), Some(c));
            } else if dec.layer_of[v] == Some(0) {
                prop_assert!(!out.coloring.is_colored(v));
            } else {
                prop_assert!(out.coloring.is_colored(v));
            }
        }
        prop_assert!(out.coloring.is_proper(&g));
    }

    #[test]
    fn verify_matches_recomputation(
        g in arb_graph(10),
        raw in proptest::collection::vec(0u32..6, 10),
        k in 1u32..5,
    ) {
        let c = PartialColoring::from_options(
            (0..g.n()).map(|v| (raw[v] != 0).then(|| raw[v] - 1)).collect(),
        );
        let verdict = verify(&g, &c, k, None);
        let expected_ok = (0..g.n()).all(|v| c.get(v).is_some_and(|x| x >= 1 && x <= k))
            && g.edges().all(|(u, v)| c.get(u).is_none() || c.get(u) != c.get(v));
        prop_assert_eq!(verdict.is_ok(), expected_ok);
        for viol in verdict.violations() {
            match *viol {
                Violation::Uncolored { node } => prop_assert!(c.get(node).is_none()),
                Violation::Monochromatic { u, v, color } => {
                    prop_assert!(g.has_edge(u, v) && c.get(u) == Some(color) && c.get(v) == Some(color))
                }
                Violation::OutOfPalette { node, color } => {
                    prop_assert!(c.get(node) == Some(color) && (color == 0 || color > k))
                }
                Violation::NotInList { .. } => prop_assert!(false, "no lists were given"),
            }
        }
    }

    #[test]
    fn text_formats_round_trip(g in arb_graph(12), raw in proptest::collection::vec(0u32..5, 12)) {
        prop_assert_eq!(parse_graph(&write_graph(&g)).unwrap(), g.clone());
        let partial = PartialColoring::from_options(
            (0..g.n()).map(|v| (raw[v] != 0).then_some(raw[v])).collect(),
        );
        prop_assert_eq!(parse_partial_coloring(&write_coloring(&partial), g.n()).unwrap(), partial.clone());
        prop_assert_eq!(parse_coloring(&write_coloring(&partial), g.n()).is_ok(), partial.is_total());
    }

    #[test]
    fn marking_invariants(n in 30usize..120, d in 3usize..6, seed in 0u64..500, b in 1usize..4) {
        prop_assume!(n * d % 2 == 0);
        let h = random_regular(n, d, seed).unwrap();
        let out = marking_process(&h, &MarkingParams { p: 0.2, b, r: 2 }, seed);
        let dist = apsp(&h);
        prop_assert_eq!(out.tnodes.len(), out.pairs.len());
        for (i, &t) in out.tnodes.iter().enumerate() {
            for &u in &out.tnodes[i + 1..] {
                prop_assert!(dist[t][u] > b);
            }
            let (x, y) = out.pairs[i];
            prop_assert!(h.has_edge(t, x) && h.has_edge(t, y));
            prop_assert!(x != y && !h.has_edge(x, y));
        }
        let mut marked: Vec<usize> = out.pairs.iter().flat_map(|&(x, y)| [x, y]).collect();
        marked.sort_unstable();
        prop_assert_eq!(&marked, &out.marked);
        if b >= 2 {
            marked.dedup();
            prop_assert_eq!(marked.len(), out.marked.len(), "marks overlap");
        }
    }
}
