use crate::engine::{run_network, Network, NodeContext, NodeProgram, NodeRng, Step};
use crate::graph::Graph;

use super::PrimitiveError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinialColoring {
    /// Colors from 1.
    pub colors: Vec<u32>,
    /// Upper bound on the colors used.
    pub palette: u32,
    pub rounds: usize,
}

fn is_prime(x: u64) -> bool {
    if x < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= x {
        if x.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn next_prime(mut x: u64) -> u64 {
    while !is_prime(x) {
        x += 1;
    }
    x
}

/// Smallest `q` with `q^e >= m`.
fn int_root_ceil(m: u64, e: u32) -> u64 {
    let mut q = (m as f64).powf(1.0 / e as f64).floor().max(1.0) as u64;
    while q.saturating_pow(e) >= m && q > 1 {
        q -= 1;
    }
    while q.saturating_pow(e) < m {
        q += 1;
    }
    q
}

/// Field sizes and polynomial degrees of the reduction steps, starting from
/// a palette of `m` colors on a graph of maximum degree `delta`.
pub fn linial_schedule(m: u64, delta: u64) -> Vec<(u64, u32)> {
    let mut steps = Vec::new();
    let mut palette = m;
    if delta == 0 {
        return steps;
    }
    loop {
        let mut best: Option<(u64, u32)> = None;
        for d in 1u32..64 {
            let q = next_prime((delta * d as u64 + 1).max(int_root_ceil(palette, d + 1)));
            if best.is_none_or(|(bq, _)| q < bq) {
                best = Some((q, d));
            }
            if delta * d as u64 + 1 > best.unwrap().0 {
                break;
            }
        }
        let (q, d) = best.unwrap();
        if q * q >= palette {
            return steps;
        }
        steps.push((q, d));
        palette = q * q;
    }
}

fn eval(color: u64, q: u64, d: u32, x: u64) -> u64 {
    // Coefficients are the base-q digits of the color.
    let mut c = color;
    let mut coeffs = Vec::with_capacity(d as usize + 1);
    for _ in 0..=d {
        coeffs.push(c % q);
        c /= q;
    }
    coeffs.iter().rev().fold(0, |acc, &a| (acc * x + a) % q)
}

struct Linial {
    schedule: Vec<(u64, u32)>,
    /// Palette after the polynomial steps.
    palette: u64,
    /// Final palette after the one-class-per-round reduction.
    target: u64,
}

impl NodeProgram for Linial {
    type State = u64;
    type Msg = u64;
    type Output = u32;

    fn init(&self, ctx: &NodeContext) -> u64 {
        ctx.label
    }

    fn step(
        &self,
        _: &NodeContext,
        round: usize,
        color: &mut u64,
        inbox: &[(u64, u64)],
        _: &mut NodeRng,
    ) -> Step<u64, u32> {
        let steps = self.schedule.len();
        if (1..=steps).contains(&round) {
            let (q, d) = self.schedule[round - 1];
            let x = (0..q)
                .find(|&x| {
                    let mine = eval(*color, q, d, x);
                    inbox.iter().all(|&(_, c)| eval(c, q, d, x) != mine)
                })
                .expect("q exceeds delta * d, so a separating point exists");
            *color = x * q + eval(*color, q, d, x);
        } else if round > steps && *color == self.palette - (round - steps) as u64 {
            *color = (0..self.target)
                .find(|c| inbox.iter().all(|(_, x)| x != c))
                .expect("target exceeds delta");
        }
        let s = Step::broadcast(*color);
        let last = steps + (self.palette - self.target.min(self.palette)) as usize;
        if round == last {
            s.with_output(*color as u32 + 1)
        } else {
            s
        }
    }
}

/// Proper coloring with at most `max(5Δ², Δ + 1)` colors in `O(log* n)`
/// rounds: polynomial reductions over prime fields, then one color class
/// per round until the target palette is reached.
pub fn linial_coloring(g: &Graph) -> Result<LinialColoring, PrimitiveError> {
    let net = Network::new(g);
    let delta = g.max_degree() as u64;
    let schedule = linial_schedule(g.n().max(1) as u64, delta);
    let palette = match schedule.last() {
        Some(&(q, _)) => q * q,
        None => g.n().max(1) as u64,
    };
    let target = (5 * delta * delta).max(delta + 1);
    let run = run_network(
        &net,
        &Linial {
            schedule,
            palette,
            target,
        },
        0,
        usize::MAX,
    )?;
    Ok(LinialColoring {
        colors: run.outputs,
        palette: palette.min(target) as u32,
        rounds: run.rounds,
    })
}
