use serde::{Deserialize, Serialize};

use crate::engine::{run_sync, NodeContext, NodeProgram, NodeRng, Step};
use crate::graph::{Graph, NodeId};

use super::{linial_coloring, PrimitiveError};
use rand::Rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RulingMethod {
    /// Digit recursion over a Linial coloring; alpha = 2 only.
    Det2Beta,
    /// Digit recursion over binary node ids; any alpha.
    DetK,
    /// Luby's randomized MIS; alpha = 2 only.
    RandLogLog,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RulingSetParams {
    pub alpha: usize,
    /// Target covering distance; the achieved value is measured.
    pub beta: usize,
    pub method: RulingMethod,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RulingSet {
    /// Sorted.
    pub members: Vec<NodeId>,
    /// Largest distance from a node to the set (0 for an empty graph).
    pub measured_beta: usize,
    pub rounds: usize,
}

/// Checks pairwise distance `>= alpha` and covering distance `<= beta`.
pub fn verify_ruling_set(g: &Graph, members: &[NodeId], alpha: usize, beta: usize) -> bool {
    let cover = g.distances_from(members, None);
    if g.n() > 0 && cover.iter().any(|d| d.is_none_or(|d| d > beta)) {
        return false;
    }
    members.iter().all(|&m| {
        let near = g.distances_from(&[m], Some(alpha.saturating_sub(1)));
        members.iter().all(|&o| o == m || near[o].is_none())
    })
}

fn measured_cover(g: &Graph, members: &[NodeId]) -> usize {
    g.distances_from(members, None)
        .into_iter()
        .map(|d| d.expect("every component holds a member"))
        .max()
        .unwrap_or(0)
}

pub fn ruling_set(
    g: &Graph,
    params: RulingSetParams,
    seed: u64,
) -> Result<RulingSet, PrimitiveError> {
    if params.alpha < 2 || params.beta < 1 {
        return Err(PrimitiveError::BadRulingParams);
    }
    let n = g.n();
    match params.method {
        RulingMethod::Det2Beta => {
            if params.alpha != 2 {
                return Err(PrimitiveError::ParamUnsupported {
                    method: params.method,
                    alpha: params.alpha,
                });
            }
            let lin = linial_coloring(g)?;
            let palette = lin.palette.max(1) as u64;
            let digits = (params.beta as u32).min(ceil_log(palette, 2)).max(1);
            let base = int_root_ceil(palette, digits).max(2);
            let digits = ceil_log(palette, base).max(1);
            let names: Vec<u64> = lin.colors.iter().map(|&c| c as u64 - 1).collect();
            let members = digit_recursion(g, &names, base, digits, 2);
            let rounds = lin.rounds + digits as usize * (base as usize - 1);
            Ok(RulingSet {
                measured_beta: measured_cover(g, &members),
                members,
                rounds,
            })
        }
        RulingMethod::DetK => {
            let digits = ceil_log(n.max(2) as u64, 2);
            let names: Vec<u64> = (0..n as u64).collect();
            let members = digit_recursion(g, &names, 2, digits, params.alpha);
            let rounds = digits as usize * (params.alpha - 1);
            Ok(RulingSet {
                measured_beta: measured_cover(g, &members),
                members,
                rounds,
            })
        }
        RulingMethod::RandLogLog => {
            if params.alpha != 2 {
                return Err(PrimitiveError::ParamUnsupported {
                    method: params.method,
                    alpha: params.alpha,
                });
            }
            let run = run_sync(g, &Luby, seed, usize::MAX)?;
            let members: Vec<NodeId> = (0..n).filter(|&v| run.outputs[v]).collect();
            Ok(RulingSet {
                measured_beta: measured_cover(g, &members),
                members,
                rounds: run.rounds,
            })
        }
    }
}

/// Smallest `L` with `base^L >= m`.
fn ceil_log(m: u64, base: u64) -> u32 {
    let mut l = 0;
    let mut p = 1u64;
    while p < m {
        p = p.saturating_mul(base);
        l += 1;
    }
    l
}

fn int_root_ceil(m: u64, e: u32) -> u64 {
    let mut q = 1u64;
    while q.saturating_pow(e) < m {
        q += 1;
    }
    q
}

/// Bottom-up merge over the base-`base` digits of `names`, most significant
/// first. Within a group, subgroups are merged in digit order and a member of
/// a later subgroup survives iff no survivor of an earlier one lies within
/// distance `alpha - 1`. Nodes with equal names must be at distance `>= alpha`.
fn digit_recursion(g: &Graph, names: &[u64], base: u64, digits: u32, alpha: usize) -> Vec<NodeId> {
    let n = g.n();
    let mut alive = vec![true; n];
    // Distances are checked by bounded BFS, reusing stamp arrays.
    let mut seen = vec![u32::MAX; n];
    let mut stamp = 0u32;
    let mut queue = Vec::new();
    for level in (0..digits).rev() {
        let shift = base.pow(digits - level - 1);
        let digit = |v: NodeId| (names[v] / shift) % base;
        let prefix = |v: NodeId| names[v] / (shift * base);
        // Survivors of earlier subgroups at this level.
        let mut accepted = vec![false; n];
        for v in 0..n {
            if alive[v] && digit(v) == 0 {
                accepted[v] = true;
            }
        }
        for d in 1..base {
            let candidates: Vec<NodeId> = (0..n).filter(|&v| alive[v] && digit(v) == d).collect();
            let mut keep = Vec::new();
            for &u in &candidates {
                stamp += 1;
                let p = prefix(u);
                let mut conflict = false;
                queue.clear();
                queue.push((u, 0usize));
                seen[u] = stamp;
                let mut i = 0;
                'bfs: while i < queue.len() {
                    let (x, dx) = queue[i];
                    i += 1;
                    if dx == alpha - 1 {
                        continue;
                    }
                    for &w in g.neighbors(x) {
                        if seen[w] != stamp {
                            seen[w] = stamp;
                            if accepted[w] && prefix(w) == p {
                                conflict = true;
                                break 'bfs;
                            }
                            queue.push((w, dx + 1));
                        }
                    }
                }
                if conflict {
                    alive[u] = false;
                } else {
                    keep.push(u);
                }
            }
            for u in keep {
                accepted[u] = true;
            }
        }
    }
    (0..n).filter(|&v| alive[v]).collect()
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum LubyState {
    Undecided(u64),
    In,
    Out,
}

#[derive(Clone, Copy)]
enum LubyMsg {
    Priority(u64),
    Joined,
}

struct Luby;

impl NodeProgram for Luby {
    type State = LubyState;
    type Msg = LubyMsg;
    type Output = bool;

    fn init(&self, _: &NodeContext) -> LubyState {
        LubyState::Undecided(0)
    }

    fn step(
        &self,
        ctx: &NodeContext,
        round: usize,
        st: &mut LubyState,
        inbox: &[(u64, LubyMsg)],
        rng: &mut NodeRng,
    ) -> Step<LubyMsg, bool> {
        if round.is_multiple_of(2) {
            if inbox.iter().any(|(_, m)| matches!(m, LubyMsg::Joined)) {
                *st = LubyState::Out;
                return Step::silent().with_output(false);
            }
            match st {
                LubyState::Undecided(p) => {
                    *p = rng.random();
                    Step::broadcast(LubyMsg::Priority(*p))
                }
                _ => Step::silent(),
            }
        } else {
            let LubyState::Undecided(p) = *st else {
                return Step::silent();
            };
            let wins = inbox.iter().all(|&(l, m)| match m {
                LubyMsg::Priority(q) => (p, ctx.label) < (q, l),
                LubyMsg::Joined => true,
            });
            if wins {
                *st = LubyState::In;
                Step::broadcast(LubyMsg::Joined).with_output(true)
            } else {
                Step::silent()
            }
        }
    }
}
