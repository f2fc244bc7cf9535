//! Depth-first enumeration of all tables satisfying a condition list.
//!
//! Free positions are assigned greedily: the next position is the one that
//! completes the most condition instances. Each instance is checked as soon
//! as the last free position it reads has a value. The first few positions
//! are split into prefixes that run as independent tasks, and the merged
//! solutions are sorted, so the output does not depend on scheduling.

use std::ops::ControlFlow;

use rayon::prelude::*;

use super::{Cond, Ctx, FlatTables, Frame, Recorder};
use crate::error::{Error, Result};

pub(crate) struct Problem<'a> {
    pub ctx: Ctx<'a>,
    pub frame: &'a Frame,
    pub conds: Vec<&'a Cond>,
    /// Free positions.
    pub order: Vec<usize>,
    /// Values for every position; free positions are overwritten.
    pub base: Vec<usize>,
    /// Value range per position.
    pub domains: Vec<usize>,
}

pub(crate) struct Solutions {
    /// Full value vectors in ascending lexicographic order.
    pub tables: Vec<Vec<usize>>,
}

struct Check<'a> {
    cond: &'a Cond,
    witness: Vec<usize>,
}

struct Compiled<'a> {
    /// Free positions in assignment order.
    order: Vec<usize>,
    checks: Vec<Vec<Check<'a>>>,
    infeasible: bool,
}

/// An instance together with the free positions it reads.
struct Instance<'a> {
    check: Check<'a>,
    free: Vec<usize>,
}

fn instances<'a>(p: &Problem<'a>) -> Option<Vec<Instance<'a>>> {
    let mut is_free = vec![false; p.frame.len()];
    for &pos in &p.order {
        is_free[pos] = true;
    }
    let fixed = FlatTables {
        frame: p.frame,
        values: &p.base,
    };
    let mut out = Vec::new();
    let mut infeasible = false;
    for &cond in &p.conds {
        let _ = cond.scope.for_each(p.ctx.x, |w| {
            let rec = Recorder {
                frame: p.frame,
                touched: Default::default(),
            };
            cond.holds(p.ctx, &rec, w);
            let mut free: Vec<usize> = rec.touched.into_inner().into_iter().filter(|&q| is_free[q]).collect();
            free.sort_unstable();
            free.dedup();
            if free.is_empty() {
                if !cond.holds(p.ctx, &fixed, w) {
                    infeasible = true;
                    return ControlFlow::Break(());
                }
            } else {
                out.push(Instance {
                    check: Check {
                        cond,
                        witness: w.to_vec(),
                    },
                    free,
                });
            }
            ControlFlow::Continue(())
        });
        if infeasible {
            return None;
        }
    }
    Some(out)
}

/// Picks positions one at a time, preferring the one that completes the
/// most instances, then the one read by the most open instances, then
/// the earliest in `p.order`.
fn plan(p: &Problem, inst: &[Instance]) -> Vec<usize> {
    let len = p.frame.len();
    let mut readers: Vec<Vec<usize>> = vec![Vec::new(); len];
    for (i, ins) in inst.iter().enumerate() {
        for &q in &ins.free {
            readers[q].push(i);
        }
    }
    let mut open: Vec<usize> = inst.iter().map(|i| i.free.len()).collect();
    let mut left: Vec<usize> = p.order.clone();
    let mut order = Vec::with_capacity(left.len());
    while !left.is_empty() {
        let score = |q: usize| {
            let done = readers[q].iter().filter(|&&i| open[i] == 1).count();
            let live = readers[q].iter().filter(|&&i| open[i] > 0).count();
            (done, live)
        };
        let mut best = 0;
        let mut best_score = score(left[0]);
        for (k, &q) in left.iter().enumerate().skip(1) {
            let sc = score(q);
            if sc > best_score {
                best = k;
                best_score = sc;
            }
        }
        let q = left.remove(best);
        for &i in &readers[q] {
            open[i] -= 1;
        }
        order.push(q);
    }
    order
}

fn compile<'a>(p: &Problem<'a>) -> Compiled<'a> {
    let Some(inst) = instances(p) else {
        return Compiled {
            order: Vec::new(),
            checks: Vec::new(),
            infeasible: true,
        };
    };
    let order = plan(p, &inst);
    let mut level = vec![usize::MAX; p.frame.len()];
    for (k, &pos) in order.iter().enumerate() {
        level[pos] = k;
    }
    let mut checks: Vec<Vec<Check>> = (0..order.len()).map(|_| Vec::new()).collect();
    for ins in inst {
        let k = ins.free.iter().map(|&q| level[q]).max().expect("nonempty");
        checks[k].push(ins.check);
    }
    Compiled {
        order,
        checks,
        infeasible: false,
    }
}

struct Task<'a, 'p> {
    p: &'p Problem<'a>,
    c: &'p Compiled<'a>,
    values: Vec<usize>,
    nodes: u64,
    budget: u64,
    out: Vec<Vec<usize>>,
}

struct OutOfBudget;

impl Task<'_, '_> {
    fn level_ok(&self, k: usize) -> bool {
        let t = FlatTables {
            frame: self.p.frame,
            values: &self.values,
        };
        self.c.checks[k]
            .iter()
            .all(|ch| ch.cond.holds(self.p.ctx, &t, &ch.witness))
    }

    fn dfs(&mut self, k: usize) -> std::result::Result<(), OutOfBudget> {
        if k == self.c.order.len() {
            self.out.push(self.values.clone());
            return Ok(());
        }
        let pos = self.c.order[k];
        for v in 0..self.p.domains[pos] {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(OutOfBudget);
            }
            self.values[pos] = v;
            if self.level_ok(k) {
                self.dfs(k + 1)?;
            }
        }
        Ok(())
    }
}

/// Number of leading free positions handed out as separate tasks.
fn split_depth(p: &Problem, order: &[usize]) -> usize {
    let mut prod = 1usize;
    for (d, &pos) in order.iter().enumerate() {
        if prod >= 256 {
            return d;
        }
        prod = prod.saturating_mul(p.domains[pos]);
    }
    order.len()
}

/// Enumerates every assignment of the free positions satisfying all
/// conditions. Each task may visit at most `budget` nodes, and so may all
/// tasks together.
pub(crate) fn solve(p: &Problem, budget: u64) -> Result<Solutions> {
    let c = compile(p);
    if c.infeasible {
        return Ok(Solutions {
            tables: Vec::new(),
        });
    }
    let depth = split_depth(p, &c.order);
    let radices: Vec<usize> = c.order[..depth].iter().map(|&pos| p.domains[pos]).collect();
    let count: usize = radices.iter().product();
    let results: Vec<(std::result::Result<Vec<Vec<usize>>, OutOfBudget>, u64)> = (0..count)
        .into_par_iter()
        .map(|mut code| {
            let mut prefix = vec![0; depth];
            for (slot, &r) in prefix.iter_mut().zip(&radices).rev() {
                *slot = code % r;
                code /= r;
            }
            let mut t = Task {
                p,
                c: &c,
                values: p.base.clone(),
                nodes: 0,
                budget,
                out: Vec::new(),
            };
            for (k, &v) in prefix.iter().enumerate() {
                t.values[c.order[k]] = v;
            }
            t.nodes = 1;
            if !(0..depth).all(|k| t.level_ok(k)) {
                return (Ok(Vec::new()), t.nodes);
            }
            let r = t.dfs(depth).map(|()| std::mem::take(&mut t.out));
            (r, t.nodes)
        })
        .collect();
    let nodes: u64 = results.iter().map(|(_, k)| k).sum();
    if nodes > budget || results.iter().any(|(r, _)| r.is_err()) {
        return Err(Error::ResourceLimit {
            what: format!("constraint search over {} positions ({nodes} nodes visited)", p.order.len()),
            budget,
        });
    }
    let mut tables: Vec<Vec<usize>> = results.into_iter().flat_map(|(r, _)| r.ok().unwrap_or_default()).collect();
    tables.sort_unstable();
    Ok(Solutions { tables })
}
