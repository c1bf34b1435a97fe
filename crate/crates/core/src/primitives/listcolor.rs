use rand::Rng;

use crate::engine::{run_sync, NodeContext, NodeProgram, NodeRng, Step};
use crate::graph::{Graph, NodeId};

use super::PrimitiveError;

/// Per-node color lists, each sorted without duplicates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ListAssignment(Vec<Vec<u32>>);

impl ListAssignment {
    pub fn new(lists: Vec<Vec<u32>>) -> Self {
        ListAssignment(
            lists
                .into_iter()
                .map(|mut l| {
                    l.sort_unstable();
                    l.dedup();
                    l
                })
                .collect(),
        )
    }

    /// `{1..k}` at every node.
    pub fn uniform(n: usize, k: u32) -> Self {
        ListAssignment(vec![(1..=k).collect(); n])
    }

    pub fn get(&self, v: NodeId) -> &[u32] {
        &self.0[v]
    }

    pub fn as_slice(&self) -> &[Vec<u32>] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// First node whose list is not larger than its degree.
    pub fn check_deg_plus_one(&self, g: &Graph) -> Result<(), PrimitiveError> {
        for v in 0..g.n() {
            if self.0[v].len() <= g.degree(v) {
                return Err(PrimitiveError::ListTooSmall {
                    node: v,
                    size: self.0[v].len(),
                    degree: g.degree(v),
                });
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug)]
pub enum ListStrategy<'a> {
    /// One round per class of a proper base coloring; each class picks the
    /// smallest available color.
    ClassSweep { base: &'a [u32] },
    /// Propose a uniform available color, keep it unless a neighbor proposed
    /// the same one. Two rounds per trial.
    Randomized,
    /// Colors of a network decomposition in ascending order; each cluster
    /// gathers its topology and colors greedily by node id. `D + 1` rounds
    /// per cluster color.
    ClusterSweep {
        cluster_color: &'a [u32],
        diameter: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ListColoring {
    pub colors: Vec<u32>,
    pub rounds: usize,
}

pub fn list_color(
    g: &Graph,
    lists: &ListAssignment,
    strategy: ListStrategy,
    seed: u64,
) -> Result<ListColoring, PrimitiveError> {
    assert_eq!(lists.len(), g.n(), "one list per node");
    lists.check_deg_plus_one(g)?;
    match strategy {
        ListStrategy::ClassSweep { base } => {
            if let Some((u, v)) = g.edges().find(|&(u, v)| base[u] == base[v]) {
                return Err(PrimitiveError::BaseNotProper(u, v));
            }
            if let Some(v) = base.iter().position(|&c| c == 0) {
                return Err(PrimitiveError::BaseColorZero(v));
            }
            let run = run_sync(g, &ClassSweep { lists, base }, seed, usize::MAX)?;
            Ok(ListColoring {
                colors: run.outputs,
                rounds: run.rounds,
            })
        }
        ListStrategy::Randomized => {
            let run = run_sync(g, &Trials { lists }, seed, usize::MAX)?;
            Ok(ListColoring {
                colors: run.outputs,
                rounds: run.rounds,
            })
        }
        ListStrategy::ClusterSweep {
            cluster_color,
            diameter,
        } => {
            let mut colors = vec![0u32; g.n()];
            let mut order: Vec<NodeId> = (0..g.n()).collect();
            order.sort_by_key(|&v| (cluster_color[v], v));
            for v in order {
                let c = lists
                    .get(v)
                    .iter()
                    .copied()
                    .find(|&c| g.neighbors(v).iter().all(|&w| colors[w] != c))
                    .expect("deg+1 lists always leave a color");
                colors[v] = c;
            }
            let classes = cluster_color.iter().copied().max().unwrap_or(0) as usize;
            Ok(ListColoring {
                colors,
                rounds: classes * (diameter + 1),
            })
        }
    }
}

struct ClassSweep<'a> {
    lists: &'a ListAssignment,
    base: &'a [u32],
}

impl NodeProgram for ClassSweep<'_> {
    type State = Vec<u32>;
    type Msg = u32;
    type Output = u32;

    fn init(&self, ctx: &NodeContext) -> Vec<u32> {
        self.lists.get(ctx.label as usize).to_vec()
    }

    fn step(
        &self,
        ctx: &NodeContext,
        round: usize,
        avail: &mut Vec<u32>,
        inbox: &[(u64, u32)],
        _: &mut NodeRng,
    ) -> Step<u32, u32> {
        for (_, c) in inbox {
            if let Ok(i) = avail.binary_search(c) {
                avail.remove(i);
            }
        }
        if self.base[ctx.label as usize] as usize == round + 1 {
            let c = avail[0];
            Step::broadcast(c).with_output(c)
        } else {
            Step::silent()
        }
    }
}

struct Trials<'a> {
    lists: &'a ListAssignment,
}

#[derive(Clone, Copy)]
enum TrialMsg {
    Propose(u32),
    Final(u32),
}

struct TrialState {
    avail: Vec<u32>,
    proposal: Option<u32>,
    done: bool,
}

impl NodeProgram for Trials<'_> {
    type State = TrialState;
    type Msg = TrialMsg;
    type Output = u32;

    fn init(&self, ctx: &NodeContext) -> TrialState {
        TrialState {
            avail: self.lists.get(ctx.label as usize).to_vec(),
            proposal: None,
            done: false,
        }
    }

    fn step(
        &self,
        _: &NodeContext,
        round: usize,
        st: &mut TrialState,
        inbox: &[(u64, TrialMsg)],
        rng: &mut NodeRng,
    ) -> Step<TrialMsg, u32> {
        if st.done {
            return Step::silent();
        }
        if round.is_multiple_of(2) {
            for (_, m) in inbox {
                if let TrialMsg::Final(c) = m {
                    if let Ok(i) = st.avail.binary_search(c) {
                        st.avail.remove(i);
                    }
                }
            }
            let c = st.avail[rng.random_range(0..st.avail.len())];
            st.proposal = Some(c);
            Step::broadcast(TrialMsg::Propose(c))
        } else {
            let c = st.proposal.take().expect("proposed in the previous round");
            if inbox
                .iter()
                .any(|(_, m)| matches!(m, TrialMsg::Propose(x) if *x == c))
            {
                Step::silent()
            } else {
                st.done = true;
                Step::broadcast(TrialMsg::Final(c)).with_output(c)
            }
        }
    }
}
