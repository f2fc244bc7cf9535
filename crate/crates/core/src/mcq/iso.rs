use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::FiniteMCQ;
use crate::error::{Error, Result};
use crate::finite_algebra::{Codomain, MapTable};

/// Work done by [`mcq_iso_search`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoStats {
    /// Search nodes visited, summed over root branches.
    pub nodes: u64,
    pub root_branches: usize,
    /// True when the invariants differed and no search ran.
    pub pruned_by_invariants: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoOutcome {
    pub isomorphism: Option<MapTable>,
    pub stats: IsoStats,
}

/// Per-element isomorphism invariant.
type Signature = (usize, usize, usize, usize, bool);

fn signatures(x: &FiniteMCQ) -> Vec<Signature> {
    let n = x.order();
    (0..n)
        .map(|a| {
            let c = x.component_of(a);
            let local = a - x.layout().offset(c);
            let fixed_by = (0..n).filter(|&z| x.tri(z, a) == z).count();
            let fixes = (0..n).filter(|&y| x.tri(a, y) == a).count();
            (
                x.layout().size(c),
                x.component(c).element_order(local),
                fixed_by,
                fixes,
                x.identity_of(a) == a,
            )
        })
        .collect()
}

struct Search<'a> {
    x1: &'a FiniteMCQ,
    x2: &'a FiniteMCQ,
    sig1: &'a [Signature],
    sig2: &'a [Signature],
    budget: u64,
    nodes: u64,
    f: Vec<usize>,
    used: Vec<bool>,
    assigned: Vec<usize>,
    comp_map: Vec<usize>,
    comp_used: Vec<bool>,
    comp_trail: Vec<usize>,
    queue: Vec<(usize, usize)>,
}

const UNSET: usize = usize::MAX;

struct BudgetExceeded;

impl<'a> Search<'a> {
    fn new(x1: &'a FiniteMCQ, x2: &'a FiniteMCQ, sig1: &'a [Signature], sig2: &'a [Signature], budget: u64) -> Self {
        let n = x1.order();
        Self {
            x1,
            x2,
            sig1,
            sig2,
            budget,
            nodes: 0,
            f: vec![UNSET; n],
            used: vec![false; n],
            assigned: Vec::with_capacity(n),
            comp_map: vec![UNSET; x1.num_components()],
            comp_used: vec![false; x2.num_components()],
            comp_trail: Vec::new(),
            queue: Vec::new(),
        }
    }

    fn undo(&mut self, assigned: usize, comps: usize) {
        for x in self.assigned.drain(assigned..) {
            self.used[self.f[x]] = false;
            self.f[x] = UNSET;
        }
        for c in self.comp_trail.drain(comps..) {
            self.comp_used[self.comp_map[c]] = false;
            self.comp_map[c] = UNSET;
        }
    }

    /// Assigns `f(x) = v` and closes under every value it forces.
    fn assign(&mut self, x: usize, v: usize) -> bool {
        self.queue.clear();
        self.queue.push((x, v));
        while let Some((x, v)) = self.queue.pop() {
            if self.f[x] != UNSET {
                if self.f[x] != v {
                    return false;
                }
                continue;
            }
            if self.used[v] || self.sig1[x] != self.sig2[v] {
                return false;
            }
            let (c1, c2) = (self.x1.component_of(x), self.x2.component_of(v));
            match self.comp_map[c1] {
                UNSET if self.comp_used[c2] => return false,
                UNSET => {
                    self.comp_map[c1] = c2;
                    self.comp_used[c2] = true;
                    self.comp_trail.push(c1);
                }
                m if m != c2 => return false,
                _ => {}
            }
            self.f[x] = v;
            self.used[v] = true;
            self.assigned.push(x);
            let (x1, x2) = (self.x1, self.x2);
            self.queue.push((x1.identity_of(x), x2.identity_of(v)));
            self.queue.push((x1.inv(x), x2.inv(v)));
            for i in 0..self.assigned.len() {
                let y = self.assigned[i];
                let w = self.f[y];
                self.queue.push((x1.tri(x, y), x2.tri(v, w)));
                self.queue.push((x1.tri(y, x), x2.tri(w, v)));
                if x1.same_component(x, y) {
                    self.queue.push((x1.mul(x, y), x2.mul(v, w)));
                    self.queue.push((x1.mul(y, x), x2.mul(w, v)));
                }
            }
        }
        true
    }

    fn dfs(&mut self) -> std::result::Result<bool, BudgetExceeded> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(BudgetExceeded);
        }
        let Some(x) = self.f.iter().position(|&v| v == UNSET) else {
            return Ok(true);
        };
        for v in 0..self.x2.order() {
            if self.used[v] || self.sig1[x] != self.sig2[v] {
                continue;
            }
            let (a, c) = (self.assigned.len(), self.comp_trail.len());
            if self.assign(x, v) && self.dfs()? {
                return Ok(true);
            }
            self.undo(a, c);
        }
        Ok(false)
    }
}

fn invariants_match(x1: &FiniteMCQ, x2: &FiniteMCQ, sig1: &[Signature], sig2: &[Signature]) -> bool {
    if x1.order() != x2.order() || x1.size_multiset() != x2.size_multiset() {
        return false;
    }
    if x1.as_quandle().quandle_type() != x2.as_quandle().quandle_type() {
        return false;
    }
    let (mut s1, mut s2) = (sig1.to_vec(), sig2.to_vec());
    s1.sort_unstable();
    s2.sort_unstable();
    s1 == s2
}

/// Finds an MCQ isomorphism `X1 → X2`, or shows there is none.
///
/// The search assigns images in ascending element order, tries candidate
/// images in ascending order and propagates every value forced by the two
/// operations, so the map returned is the lexicographically least
/// isomorphism. Root branches (the image of element `0`) run in parallel,
/// each with its own node `budget`; if a branch that precedes the first
/// success runs out, the search fails with [`Error::ResourceLimit`].
pub fn mcq_iso_search(x1: &FiniteMCQ, x2: &FiniteMCQ, budget: u64) -> Result<IsoOutcome> {
    let (sig1, sig2) = (signatures(x1), signatures(x2));
    if !invariants_match(x1, x2, &sig1, &sig2) {
        return Ok(IsoOutcome {
            isomorphism: None,
            stats: IsoStats {
                pruned_by_invariants: true,
                ..IsoStats::default()
            },
        });
    }
    let n = x1.order();
    let roots: Vec<usize> = (0..n).filter(|&v| sig1[0] == sig2[v]).collect();
    let branches: Vec<(std::result::Result<Option<Vec<usize>>, BudgetExceeded>, u64)> = roots
        .par_iter()
        .map(|&v| {
            let mut s = Search::new(x1, x2, &sig1, &sig2, budget);
            s.nodes = 1;
            let outcome = if !s.assign(0, v) {
                Ok(None)
            } else {
                s.dfs().map(|found| found.then(|| s.f.clone()))
            };
            (outcome, s.nodes)
        })
        .collect();
    let mut stats = IsoStats {
        nodes: branches.iter().map(|(_, k)| k).sum(),
        root_branches: roots.len(),
        pruned_by_invariants: false,
    };
    for (i, (outcome, _)) in branches.into_iter().enumerate() {
        match outcome {
            Ok(Some(values)) => {
                return Ok(IsoOutcome {
                    isomorphism: Some(MapTable::from_points(n, Codomain::Carrier(n), |x| values[x])),
                    stats,
                })
            }
            Ok(None) => {}
            Err(BudgetExceeded) => {
                stats.root_branches = i + 1;
                return Err(Error::ResourceLimit {
                    what: format!(
                        "isomorphism search: root branch {} of {} ran out after {} nodes in total",
                        i + 1,
                        roots.len(),
                        stats.nodes
                    ),
                    budget,
                });
            }
        }
    }
    Ok(IsoOutcome {
        isomorphism: None,
        stats,
    })
}
