//! Lockstep synchronous round simulator for the LOCAL model.
//!
//! In round `t` every node steps once, reading the messages its neighbors
//! sent in round `t - 1`. Step 0 sees an empty inbox, so a program that
//! decides in step `t` has used `t` communication rounds.

mod coloring;
mod report;

pub use coloring::PartialColoring;
pub use report::RunReport;

use std::collections::HashMap;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::graph::{Graph, NodeId};

/// Graphs at least this large step their nodes on the rayon pool.
const PARALLEL_THRESHOLD: usize = 4096;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EngineError {
    #[error("{pending} node(s) without output after {rounds} rounds")]
    RoundLimitExceeded { rounds: usize, pending: usize },
    #[error("max_rounds must be at least 1")]
    ZeroRoundLimit,
    #[error("label table has {labels} entries for {n} nodes")]
    LabelMismatch { labels: usize, n: usize },
}

/// What a node knows about itself before any communication.
#[derive(Clone, Debug)]
pub struct NodeContext<'a> {
    pub label: u64,
    pub neighbors: &'a [u64],
    /// Upper bound on the network size known to every node.
    pub n: usize,
    pub delta: usize,
}

impl NodeContext<'_> {
    pub fn degree(&self) -> usize {
        self.neighbors.len()
    }
}

pub enum Outbox<M> {
    Silent,
    Broadcast(M),
    /// Per-neighbor messages addressed by label.
    Direct(Vec<(u64, M)>),
}

pub struct Step<M, O> {
    pub outbox: Outbox<M>,
    pub output: Option<O>,
}

impl<M, O> Step<M, O> {
    pub fn silent() -> Self {
        Step {
            outbox: Outbox::Silent,
            output: None,
        }
    }

    pub fn broadcast(msg: M) -> Self {
        Step {
            outbox: Outbox::Broadcast(msg),
            output: None,
        }
    }

    pub fn with_output(mut self, out: O) -> Self {
        self.output = Some(out);
        self
    }
}

/// A per-node algorithm. `step` must depend only on its arguments.
pub trait NodeProgram: Sync {
    type State: Send + Sync;
    type Msg: Clone + Send + Sync;
    type Output: Clone + Send + Sync;

    fn init(&self, ctx: &NodeContext) -> Self::State;

    /// `inbox` is sorted by sender label.
    fn step(
        &self,
        ctx: &NodeContext,
        round: usize,
        state: &mut Self::State,
        inbox: &[(u64, Self::Msg)],
        rng: &mut NodeRng,
    ) -> Step<Self::Msg, Self::Output>;
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Key of the random stream of node `label` in `round`.
pub fn stream_key(seed: u64, label: u64, round: u64) -> u64 {
    splitmix64(seed ^ splitmix64(label ^ splitmix64(round.wrapping_add(0x5851_f42d_4c95_7f2d))))
}

/// Random stream of one node in one round, created on first use.
pub struct NodeRng {
    key: u64,
    inner: Option<ChaCha8Rng>,
}

impl NodeRng {
    pub fn new(seed: u64, label: u64, round: u64) -> Self {
        NodeRng {
            key: stream_key(seed, label, round),
            inner: None,
        }
    }

    fn rng(&mut self) -> &mut ChaCha8Rng {
        let key = self.key;
        self.inner
            .get_or_insert_with(|| ChaCha8Rng::seed_from_u64(key))
    }
}

impl RngCore for NodeRng {
    fn next_u32(&mut self) -> u32 {
        self.rng().next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.rng().next_u64()
    }

    fn fill_bytes(&mut self, dst: &mut [u8]) {
        self.rng().fill_bytes(dst)
    }
}

/// A graph together with node labels and the global knowledge handed to nodes.
#[derive(Clone, Debug)]
pub struct Network<'g> {
    pub graph: &'g Graph,
    pub labels: Vec<u64>,
    pub n: usize,
    pub delta: usize,
}

impl<'g> Network<'g> {
    pub fn new(graph: &'g Graph) -> Self {
        Network {
            graph,
            labels: (0..graph.n() as u64).collect(),
            n: graph.n(),
            delta: graph.max_degree(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyncRun<O> {
    pub outputs: Vec<O>,
    pub rounds: usize,
}

pub fn run_sync<P: NodeProgram>(
    g: &Graph,
    program: &P,
    seed: u64,
    max_rounds: usize,
) -> Result<SyncRun<P::Output>, EngineError> {
    run_network(&Network::new(g), program, seed, max_rounds)
}

pub fn run_network<P: NodeProgram>(
    net: &Network,
    program: &P,
    seed: u64,
    max_rounds: usize,
) -> Result<SyncRun<P::Output>, EngineError> {
    let g = net.graph;
    let n = g.n();
    if max_rounds == 0 {
        return Err(EngineError::ZeroRoundLimit);
    }
    if net.labels.len() != n {
        return Err(EngineError::LabelMismatch {
            labels: net.labels.len(),
            n,
        });
    }
    let nbr_labels: Vec<Vec<u64>> = (0..n)
        .map(|v| g.neighbors(v).iter().map(|&w| net.labels[w]).collect())
        .collect();
    let ctx = |v: NodeId| NodeContext {
        label: net.labels[v],
        neighbors: &nbr_labels[v],
        n: net.n,
        delta: net.delta,
    };
    let parallel = n >= PARALLEL_THRESHOLD;

    let mut states: Vec<P::State> = if parallel {
        (0..n)
            .into_par_iter()
            .map(|v| program.init(&ctx(v)))
            .collect()
    } else {
        (0..n).map(|v| program.init(&ctx(v))).collect()
    };
    let mut outputs: Vec<Option<P::Output>> = vec![None; n];
    let mut pending = n;
    let mut inboxes: Vec<Vec<(u64, P::Msg)>> = vec![Vec::new(); n];

    for round in 0.. {
        let step_one = |(v, (state, inbox)): (usize, (&mut P::State, &Vec<(u64, P::Msg)>))| {
            let mut rng = NodeRng::new(seed, net.labels[v], round as u64);
            program.step(&ctx(v), round, state, inbox, &mut rng)
        };
        let steps: Vec<Step<P::Msg, P::Output>> = if parallel {
            states
                .par_iter_mut()
                .zip(inboxes.par_iter())
                .enumerate()
                .map(step_one)
                .collect()
        } else {
            states
                .iter_mut()
                .zip(inboxes.iter())
                .enumerate()
                .map(step_one)
                .collect()
        };
        let mut outboxes = Vec::with_capacity(n);
        for (v, s) in steps.into_iter().enumerate() {
            if outputs[v].is_none() {
                if let Some(o) = s.output {
                    outputs[v] = Some(o);
                    pending -= 1;
                }
            }
            outboxes.push(s.outbox);
        }
        if pending == 0 {
            let outputs = outputs
                .into_iter()
                .map(|o| o.expect("all nodes decided"))
                .collect();
            return Ok(SyncRun {
                outputs,
                rounds: round,
            });
        }
        if round == max_rounds {
            return Err(EngineError::RoundLimitExceeded {
                rounds: max_rounds,
                pending,
            });
        }
        let deliver = |v: NodeId| -> Vec<(u64, P::Msg)> {
            let me = net.labels[v];
            let mut inbox: Vec<(u64, P::Msg)> = g
                .neighbors(v)
                .iter()
                .filter_map(|&u| match &outboxes[u] {
                    Outbox::Silent => None,
                    Outbox::Broadcast(m) => Some((net.labels[u], m.clone())),
                    Outbox::Direct(list) => list
                        .iter()
                        .find(|(to, _)| *to == me)
                        .map(|(_, m)| (net.labels[u], m.clone())),
                })
                .collect();
            inbox.sort_by_key(|(l, _)| *l);
            inbox
        };
        inboxes = if parallel {
            (0..n).into_par_iter().map(deliver).collect()
        } else {
            (0..n).map(deliver).collect()
        };
    }
    unreachable!()
}

/// Induced subgraph on the `r`-ball of a node with id translation.
#[derive(Clone, Debug)]
pub struct Ball {
    pub graph: Graph,
    pub center: NodeId,
    /// Local index to global id, sorted by (distance, id).
    pub to_global: Vec<NodeId>,
    pub to_local: HashMap<NodeId, NodeId>,
}

pub fn collect_ball(g: &Graph, v: NodeId, r: usize) -> Ball {
    let to_global = g.ball(v, r);
    let to_local = to_global.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    Ball {
        graph: g.induced(&to_global),
        center: 0,
        to_global,
        to_local,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::test_graphs::*;
    use rand::Rng;

    struct OwnId;

    impl NodeProgram for OwnId {
        type State = ();
        type Msg = ();
        type Output = u64;

        fn init(&self, _: &NodeContext) {}

        fn step(
            &self,
            ctx: &NodeContext,
            _: usize,
            _: &mut (),
            _: &[(u64, ())],
            _: &mut NodeRng,
        ) -> Step<(), u64> {
            Step::silent().with_output(ctx.label)
        }
    }

    /// Floods the maximum label for `n - 1` rounds.
    struct FloodMax;

    impl NodeProgram for FloodMax {
        type State = u64;
        type Msg = u64;
        type Output = u64;

        fn init(&self, ctx: &NodeContext) -> u64 {
            ctx.label
        }

        fn step(
            &self,
            ctx: &NodeContext,
            round: usize,
            best: &mut u64,
            inbox: &[(u64, u64)],
            _: &mut NodeRng,
        ) -> Step<u64, u64> {
            for &(_, m) in inbox {
                *best = (*best).max(m);
            }
            let s = Step::broadcast(*best);
            if round + 1 >= ctx.n {
                s.with_output(*best)
            } else {
                s
            }
        }
    }

    /// Outputs a random draw mixed with the neighbors' draws after `t` rounds.
    struct Mixer(usize);

    impl NodeProgram for Mixer {
        type State = u64;
        type Msg = u64;
        type Output = u64;

        fn init(&self, _: &NodeContext) -> u64 {
            0
        }

        fn step(
            &self,
            _: &NodeContext,
            round: usize,
            acc: &mut u64,
            inbox: &[(u64, u64)],
            rng: &mut NodeRng,
        ) -> Step<u64, u64> {
            for &(l, m) in inbox {
                *acc = acc.rotate_left(7) ^ m ^ l;
            }
            *acc ^= rng.random::<u64>();
            let s = Step::broadcast(*acc);
            if round == self.0 {
                s.with_output(*acc)
            } else {
                s
            }
        }
    }

    #[test]
    fn own_id_takes_zero_rounds() {
        let run = run_sync(&petersen(), &OwnId, 1, 5).unwrap();
        assert_eq!(run.rounds, 0);
        assert_eq!(run.outputs, (0..10).collect::<Vec<u64>>());
    }

    #[test]
    fn flood_max_on_path() {
        let run = run_sync(&path(5), &FloodMax, 0, 10).unwrap();
        assert_eq!(run.outputs, vec![4; 5]);
        assert_eq!(run.rounds, 4);
    }

    #[test]
    fn round_limit() {
        assert_eq!(
            run_sync(&path(5), &FloodMax, 0, 2),
            Err(EngineError::RoundLimitExceeded {
                rounds: 2,
                pending: 5
            })
        );
        assert_eq!(
            run_sync(&path(5), &FloodMax, 0, 0),
            Err(EngineError::ZeroRoundLimit)
        );
    }

    #[test]
    fn runs_are_deterministic() {
        let g = petersen();
        let a = run_sync(&g, &Mixer(3), 42, 10).unwrap();
        let b = run_sync(&g, &Mixer(3), 42, 10).unwrap();
        let c = run_sync(&g, &Mixer(3), 43, 10).unwrap();
        assert_eq!(a, b);
        assert_ne!(a.outputs, c.outputs);
    }

    #[test]
    fn output_depends_only_on_ball() {
        let g = cycle(12);
        let t = 3;
        let full = run_sync(&g, &Mixer(t), 9, 10).unwrap();
        for v in [0, 5] {
            let ball = collect_ball(&g, v, t);
            let net = Network {
                graph: &ball.graph,
                labels: ball.to_global.iter().map(|&x| x as u64).collect(),
                n: g.n(),
                delta: g.max_degree(),
            };
            let local = run_network(&net, &Mixer(t), 9, 10).unwrap();
            assert_eq!(local.outputs[ball.center], full.outputs[v]);
        }
    }

    #[test]
    fn ball_shapes() {
        let g = cycle(6);
        assert_eq!(collect_ball(&g, 3, 0).graph.n(), 1);
        let b = collect_ball(&g, 0, 2);
        assert_eq!(b.graph.n(), 5);
        assert_eq!(b.graph.m(), 4);
        assert_eq!(b.to_global[b.center], 0);
        let p = collect_ball(&petersen(), 0, 1);
        assert_eq!(p.graph.m(), 3);
        assert_eq!(p.graph.degree(p.center), 3);
    }
}
