//! The coefficient-map condition systems as data.
//!
//! Every condition is an equation between two sides evaluated at a witness
//! tuple drawn from a [`Scope`]. Scans visit witnesses in lexicographic
//! order, so the first violation reported is the least one.

pub(crate) mod search;
mod tables;

use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use crate::error::{Verdict, Violation};
use crate::finite_algebra::{FiniteRing, LeftModule};
use crate::mcq::FiniteMCQ;

pub use tables::Slot;
pub(crate) use tables::{FlatTables, Frame, Recorder, Tables};

/// The witness tuples a condition quantifies over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Scope {
    /// `x`
    Points,
    /// `(x, y)`
    Pairs,
    /// `(x, y, z)`
    Triples,
    /// `(a, b)` in one component
    CompPairs,
    /// `(a, b, c)` in one component
    CompTriples,
    /// `(x, e_λ)` for every component identity
    PointIdentities,
    /// `(e_λ, x)`
    IdentityPoints,
    /// `(x, a, b)` with `a, b` in one component
    PointCompPairs,
    /// `(a, b, x)` with `a, b` in one component
    CompPairPoints,
}

impl Scope {
    pub fn for_each(self, x: &FiniteMCQ, mut f: impl FnMut(&[usize]) -> ControlFlow<()>) -> ControlFlow<()> {
        let n = x.order();
        let l = x.layout();
        let comps = 0..l.num_components();
        match self {
            Scope::Points => (0..n).try_for_each(|a| f(&[a])),
            Scope::Pairs => (0..n).try_for_each(|a| (0..n).try_for_each(|b| f(&[a, b]))),
            Scope::Triples => (0..n).try_for_each(|a| {
                (0..n).try_for_each(|b| (0..n).try_for_each(|c| f(&[a, b, c])))
            }),
            Scope::CompPairs => comps
                .clone()
                .try_for_each(|k| l.range(k).try_for_each(|a| l.range(k).try_for_each(|b| f(&[a, b])))),
            Scope::CompTriples => comps.clone().try_for_each(|k| {
                l.range(k).try_for_each(|a| {
                    l.range(k)
                        .try_for_each(|b| l.range(k).try_for_each(|c| f(&[a, b, c])))
                })
            }),
            Scope::PointIdentities => (0..n).try_for_each(|p| {
                comps
                    .clone()
                    .try_for_each(|k| f(&[p, x.component_identity(k)]))
            }),
            Scope::IdentityPoints => comps
                .clone()
                .try_for_each(|k| (0..n).try_for_each(|p| f(&[x.component_identity(k), p]))),
            Scope::PointCompPairs => (0..n).try_for_each(|p| {
                comps.clone().try_for_each(|k| {
                    l.range(k)
                        .try_for_each(|a| l.range(k).try_for_each(|b| f(&[p, a, b])))
                })
            }),
            Scope::CompPairPoints => comps.clone().try_for_each(|k| {
                l.range(k).try_for_each(|a| {
                    l.range(k).try_for_each(|b| (0..n).try_for_each(|p| f(&[a, b, p])))
                })
            }),
        }
    }
}

/// Base structures the maps live over.
#[derive(Clone, Copy)]
pub(crate) struct Ctx<'a> {
    pub x: &'a FiniteMCQ,
    pub r: &'a FiniteRing,
    pub m: &'a LeftModule,
}

/// Evaluation helper: a context plus table access.
struct V<'a> {
    c: Ctx<'a>,
    t: &'a dyn Tables,
}

impl V<'_> {
    fn f1(&self, a: usize, b: usize) -> usize {
        self.t.get(Slot::F1, a, b)
    }
    fn f2(&self, a: usize, b: usize) -> usize {
        self.t.get(Slot::F2, a, b)
    }
    fn f3(&self, a: usize, b: usize) -> usize {
        self.t.get(Slot::F3, a, b)
    }
    fn f4(&self, a: usize, b: usize) -> usize {
        self.t.get(Slot::F4, a, b)
    }
    fn p1(&self, a: usize, b: usize) -> usize {
        self.t.get(Slot::Phi1, a, b)
    }
    fn p2(&self, a: usize, b: usize) -> usize {
        self.t.get(Slot::Phi2, a, b)
    }
    fn tri(&self, a: usize, b: usize) -> usize {
        self.c.x.tri(a, b)
    }
    fn mul(&self, a: usize, b: usize) -> usize {
        self.c.x.mul(a, b)
    }
    fn inv(&self, a: usize) -> usize {
        self.c.x.inv(a)
    }
    fn e(&self, a: usize) -> usize {
        self.c.x.identity_of(a)
    }
    /// `b⁻¹ab`
    fn conj(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv(b), a), b)
    }
    fn rm(&self, a: usize, b: usize) -> usize {
        self.c.r.mul(a, b)
    }
    fn ra(&self, a: usize, b: usize) -> usize {
        self.c.r.add(a, b)
    }
    fn one(&self) -> usize {
        self.c.r.one()
    }
    fn zero(&self) -> usize {
        self.c.r.zero()
    }
    fn unit(&self, a: usize) -> bool {
        self.c.r.is_unit(a)
    }
    fn act(&self, r: usize, u: usize) -> usize {
        self.c.m.act(r, u)
    }
    fn ma(&self, u: usize, v: usize) -> usize {
        self.c.m.add(u, v)
    }
    fn mzero(&self) -> usize {
        self.c.m.zero()
    }
}

type Eval = fn(&V, &[usize]) -> bool;

/// A named condition over a scope.
pub(crate) struct Cond {
    pub tag: &'static str,
    pub scope: Scope,
    eval: Eval,
}

impl Cond {
    pub fn holds(&self, c: Ctx, t: &dyn Tables, w: &[usize]) -> bool {
        (self.eval)(&V { c, t }, w)
    }

    pub fn first_violation(&self, c: Ctx, t: &dyn Tables) -> Option<Violation> {
        let mut found = None;
        let _ = self.scope.for_each(c.x, |w| {
            if self.holds(c, t, w) {
                ControlFlow::Continue(())
            } else {
                found = Some(Violation::new(self.tag, w));
                ControlFlow::Break(())
            }
        });
        found
    }
}

const fn cond(tag: &'static str, scope: Scope, eval: Eval) -> Cond {
    Cond { tag, scope, eval }
}

/// Verdict of one named condition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionVerdict {
    pub condition: String,
    pub verdict: Verdict,
}

/// First violation over a list of conditions, in list order.
pub(crate) fn first_violation(conds: &[Cond], c: Ctx, t: &dyn Tables) -> Verdict {
    conds
        .iter()
        .find_map(|k| k.first_violation(c, t))
        .into()
}

pub(crate) fn report(conds: &[Cond], c: Ctx, t: &dyn Tables) -> Vec<ConditionVerdict> {
    conds
        .iter()
        .map(|k| ConditionVerdict {
            condition: k.tag.to_string(),
            verdict: k.first_violation(c, t).into(),
        })
        .collect()
}

use Scope::*;

/// The nine conditions on `(f1, f2)`.
pub(crate) static PAIR: [Cond; 9] = [
    cond("A1", CompPairs, |v, w| {
        let (a, b) = (w[0], w[1]);
        v.ra(v.f1(a, b), v.f2(a, b)) == v.f1(a, v.mul(v.inv(a), b))
    }),
    cond("A2", CompPairPoints, |v, w| v.f1(w[0], w[2]) == v.f1(w[1], w[2])),
    cond("A3", CompPairPoints, |v, w| {
        let (a, b, x) = (w[0], w[1], w[2]);
        let rhs = v.ra(
            v.f2(a, x),
            v.rm(v.f1(v.tri(b, x), v.tri(v.inv(a), x)), v.f2(b, x)),
        );
        v.f2(v.mul(a, b), x) == rhs
    }),
    cond("A4", PointIdentities, |v, w| v.f1(w[0], w[1]) == v.one()),
    cond("A5", PointCompPairs, |v, w| {
        let (x, a, b) = (w[0], w[1], w[2]);
        v.f1(x, v.mul(a, b)) == v.rm(v.f1(v.tri(x, a), b), v.f1(x, a))
    }),
    cond("A6", PointCompPairs, |v, w| {
        let (x, a, b) = (w[0], w[1], w[2]);
        v.f2(x, v.mul(a, b)) == v.rm(v.f1(v.tri(x, a), b), v.f2(x, a))
    }),
    cond("A7", Triples, three_i),
    cond("A8", Triples, three_ii),
    cond("A9", Triples, three_iii),
];

/// The five twisted 2-cocycle conditions on `(phi1, phi2)` given `(f1, f2)`.
pub(crate) static COCYCLE: [Cond; 5] = [
    cond("C1", CompTriples, |v, w| {
        let (a, b, c) = (w[0], w[1], w[2]);
        let lhs = v.ma(v.p2(a, b), v.p2(v.mul(a, b), c));
        let rhs = v.ma(v.act(v.f1(a, v.inv(a)), v.p2(b, c)), v.p2(a, v.mul(b, c)));
        lhs == rhs
    }),
    cond("C2", CompPairs, |v, w| {
        let (a, b) = (w[0], w[1]);
        let lhs = v.ma(v.act(v.f1(b, v.inv(b)), v.p1(a, b)), v.p2(b, v.conj(a, b)));
        lhs == v.p2(a, b)
    }),
    cond("C3", PointCompPairs, two_phi_ii),
    cond("C4", Triples, three_phi),
    cond("C5", CompPairPoints, |v, w| {
        let (a, b, x) = (w[0], w[1], w[2]);
        let ab = v.mul(a, b);
        let lhs = v.ma(v.act(v.f1(ab, x), v.p2(a, b)), v.p1(ab, x));
        let (ax, bx) = (v.tri(a, x), v.tri(b, x));
        let rhs = v.ma(
            v.ma(
                v.p1(a, x),
                v.act(v.f1(ax, v.tri(v.inv(a), x)), v.p1(b, x)),
            ),
            v.p2(ax, bx),
        );
        lhs == rhs
    }),
];

fn three_i(v: &V, w: &[usize]) -> bool {
    let (x, y, z) = (w[0], w[1], w[2]);
    let (xz, yz) = (v.tri(x, z), v.tri(y, z));
    v.rm(v.f1(v.tri(x, y), z), v.f1(x, y)) == v.rm(v.f1(xz, yz), v.f1(x, z))
}

fn three_ii(v: &V, w: &[usize]) -> bool {
    let (x, y, z) = (w[0], w[1], w[2]);
    let (xz, yz) = (v.tri(x, z), v.tri(y, z));
    v.rm(v.f1(v.tri(x, y), z), v.f2(x, y)) == v.rm(v.f2(xz, yz), v.f1(y, z))
}

fn three_iii(v: &V, w: &[usize]) -> bool {
    let (x, y, z) = (w[0], w[1], w[2]);
    let (xz, yz) = (v.tri(x, z), v.tri(y, z));
    v.f2(v.tri(x, y), z) == v.ra(v.rm(v.f1(xz, yz), v.f2(x, z)), v.rm(v.f2(xz, yz), v.f2(y, z)))
}

fn three_phi(v: &V, w: &[usize]) -> bool {
    let (x, y, z) = (w[0], w[1], w[2]);
    let (xy, xz, yz) = (v.tri(x, y), v.tri(x, z), v.tri(y, z));
    let lhs = v.ma(v.act(v.f1(xy, z), v.p1(x, y)), v.p1(xy, z));
    let rhs = v.ma(
        v.ma(v.act(v.f1(xz, yz), v.p1(x, z)), v.act(v.f2(xz, yz), v.p1(y, z))),
        v.p1(xz, yz),
    );
    lhs == rhs
}

fn two_ii(v: &V, w: &[usize]) -> bool {
    let (x, a, b) = (w[0], w[1], w[2]);
    v.f1(x, v.mul(a, b)) == v.rm(v.f1(v.tri(x, a), b), v.f1(x, a))
}

fn two_phi_ii(v: &V, w: &[usize]) -> bool {
    let (x, a, b) = (w[0], w[1], w[2]);
    let ab = v.mul(a, b);
    let xa = v.tri(x, a);
    let lhs = v.ma(v.act(v.f2(x, ab), v.p2(a, b)), v.p1(x, ab));
    let rhs = v.ma(v.act(v.f1(xa, b), v.p1(x, a)), v.p1(xa, b));
    lhs == rhs
}

/// The 22 affine-extension conditions on a 6-tuple, in tag order.
pub(crate) static TUPLE: [Cond; 22] = [
    cond("(0-i)", CompPairs, |v, w| {
        let (p, q) = (v.f3(w[0], w[1]), v.f4(w[0], w[1]));
        v.unit(p) & v.unit(q)
    }),
    cond("(0-ii)", CompTriples, |v, w| {
        let (a, b, c) = (w[0], w[1], w[2]);
        v.rm(v.f3(v.mul(a, b), c), v.f3(a, b)) == v.f3(a, v.mul(b, c))
    }),
    cond("(0-iii)", CompTriples, |v, w| {
        let (a, b, c) = (w[0], w[1], w[2]);
        v.rm(v.f3(v.mul(a, b), c), v.f4(a, b)) == v.rm(v.f4(a, v.mul(b, c)), v.f3(b, c))
    }),
    cond("(0-iv)", CompTriples, |v, w| {
        let (a, b, c) = (w[0], w[1], w[2]);
        v.f4(v.mul(a, b), c) == v.rm(v.f4(a, v.mul(b, c)), v.f4(b, c))
    }),
    cond("(0-φ)", CompTriples, |v, w| {
        let (a, b, c) = (w[0], w[1], w[2]);
        let (ab, bc) = (v.mul(a, b), v.mul(b, c));
        let lhs = v.ma(v.act(v.f3(ab, c), v.p2(a, b)), v.p2(ab, c));
        let rhs = v.ma(v.act(v.f4(a, bc), v.p2(b, c)), v.p2(a, bc));
        lhs == rhs
    }),
    cond("(1-i)", CompPairs, |v, w| {
        let (a, b) = (w[0], w[1]);
        v.f1(a, b) == v.rm(v.f4(v.inv(b), v.mul(a, b)), v.f3(a, b))
    }),
    cond("(1-ii)", CompPairs, one_ii),
    cond("(1-φ)", CompPairs, |v, w| {
        let (a, b) = (w[0], w[1]);
        let c = v.conj(a, b);
        v.ma(v.act(v.f4(b, c), v.p1(a, b)), v.p2(b, c)) == v.p2(a, b)
    }),
    cond("(2-i)", PointIdentities, |v, w| v.f1(w[0], w[1]) == v.one()),
    cond("(2-ii)", PointCompPairs, two_ii),
    cond("(2-iii)", PointCompPairs, |v, w| {
        let (x, a, b) = (w[0], w[1], w[2]);
        v.rm(v.f2(x, v.mul(a, b)), v.f3(a, b)) == v.rm(v.f1(v.tri(x, a), b), v.f2(x, a))
    }),
    cond("(2-iv)", PointCompPairs, |v, w| {
        let (x, a, b) = (w[0], w[1], w[2]);
        v.rm(v.f2(x, v.mul(a, b)), v.f4(a, b)) == v.f2(v.tri(x, a), b)
    }),
    cond("(2-φi)", PointIdentities, |v, w| {
        let (x, e) = (w[0], w[1]);
        v.act(v.f2(x, e), v.p2(e, e)) == v.p1(x, e)
    }),
    cond("(2-φii)", PointCompPairs, two_phi_ii),
    cond("(3-i)", Triples, three_i),
    cond("(3-ii)", Triples, three_ii),
    cond("(3-iii)", Triples, three_iii),
    cond("(3-φ)", Triples, three_phi),
    cond("(4-i)", CompPairPoints, |v, w| {
        let (a, b, x) = (w[0], w[1], w[2]);
        let (ax, bx) = (v.tri(a, x), v.tri(b, x));
        v.rm(v.f1(v.mul(a, b), x), v.f3(a, b)) == v.rm(v.f3(ax, bx), v.f1(a, x))
    }),
    cond("(4-ii)", CompPairPoints, |v, w| {
        let (a, b, x) = (w[0], w[1], w[2]);
        let (ax, bx) = (v.tri(a, x), v.tri(b, x));
        v.rm(v.f1(v.mul(a, b), x), v.f4(a, b)) == v.rm(v.f4(ax, bx), v.f1(b, x))
    }),
    cond("(4-iii)", CompPairPoints, |v, w| {
        let (a, b, x) = (w[0], w[1], w[2]);
        let (ax, bx) = (v.tri(a, x), v.tri(b, x));
        let rhs = v.ra(v.rm(v.f3(ax, bx), v.f2(a, x)), v.rm(v.f4(ax, bx), v.f2(b, x)));
        v.f2(v.mul(a, b), x) == rhs
    }),
    cond("(4-φ)", CompPairPoints, |v, w| {
        let (a, b, x) = (w[0], w[1], w[2]);
        let ab = v.mul(a, b);
        let (ax, bx) = (v.tri(a, x), v.tri(b, x));
        let lhs = v.ma(v.act(v.f1(ab, x), v.p2(a, b)), v.p1(ab, x));
        let rhs = v.ma(
            v.ma(v.act(v.f3(ax, bx), v.p1(a, x)), v.act(v.f4(ax, bx), v.p1(b, x))),
            v.p2(ax, bx),
        );
        lhs == rhs
    }),
];

fn one_ii(v: &V, w: &[usize]) -> bool {
    let (a, b) = (w[0], w[1]);
    let c = v.conj(a, b);
    v.ra(v.f3(b, c), v.rm(v.f4(b, c), v.f2(a, b))) == v.f4(a, b)
}

pub(crate) const ONE_II: usize = 6;

/// The replacement for (1-ii):
/// `f2(a,b) = −f3(b⁻¹,ab) f4(b⁻¹,e) f3(b,b⁻¹) + f4(b⁻¹,ab) f4(a,b)`.
pub(crate) static ALT_ONE_II: Cond = cond("(1-ii)'", CompPairs, |v, w| {
    let (a, b) = (w[0], w[1]);
    let (bi, ab, e) = (v.inv(b), v.mul(a, b), v.e(b));
    let first = v.c.r.product(&[v.f3(bi, ab), v.f4(bi, e), v.f3(b, bi)]);
    let rhs = v.ra(v.c.r.neg(first), v.rm(v.f4(bi, ab), v.f4(a, b)));
    v.f2(a, b) == rhs
});

/// Consequences of the pair conditions.
pub(crate) static PAIR_DERIVED: [Cond; 4] = [
    cond("f1-unit", Pairs, |v, w| {
        let (x, y) = (w[0], w[1]);
        let inv = v.f1(v.tri(x, y), v.inv(y));
        let f = v.f1(x, y);
        v.rm(f, inv) == v.one() && v.rm(inv, f) == v.one()
    }),
    cond("f2-identity", IdentityPoints, |v, w| v.f2(w[0], w[1]) == v.zero()),
    cond("f1-product", CompPairPoints, |v, w| {
        let (a, b, x) = (w[0], w[1], w[2]);
        let ai = v.inv(a);
        v.rm(v.f1(v.mul(a, b), x), v.f1(a, ai))
            == v.rm(v.f1(v.tri(b, x), v.tri(ai, x)), v.f1(b, x))
    }),
    cond("f2-shift", PointCompPairs, |v, w| {
        let (x, a, b) = (w[0], w[1], w[2]);
        v.f2(v.tri(x, a), b) == v.rm(v.f2(x, v.mul(a, b)), v.f1(a, v.inv(a)))
    }),
];

/// Consequences of the cocycle conditions.
pub(crate) static COCYCLE_DERIVED: [Cond; 2] = [
    cond("phi1-diagonal", Points, |v, w| v.p1(w[0], w[0]) == v.mzero()),
    cond("phi2-identity", CompPairs, |v, w| {
        let e = v.e(w[0]);
        v.p2(e, w[0]) == v.p2(e, w[1])
    }),
];

/// Normalizations implied by the 6-tuple conditions.
pub(crate) static TUPLE_DERIVED: [Cond; 5] = [
    cond("f3-right-identity", CompPairs, |v, w| v.f3(w[0], v.e(w[0])) == v.one()),
    cond("f4-left-identity", CompPairs, |v, w| v.f4(v.e(w[0]), w[0]) == v.one()),
    cond("f3-inverse", CompPairs, |v, w| {
        let (a, b) = (w[0], w[1]);
        v.rm(v.f3(a, b), v.f3(v.mul(a, b), v.inv(b))) == v.one()
    }),
    cond("f4-inverse", CompPairs, |v, w| {
        let (a, b) = (w[0], w[1]);
        v.rm(v.f4(a, b), v.f4(v.inv(a), v.mul(a, b))) == v.one()
    }),
    cond("phi1-diagonal", Points, |v, w| v.p1(w[0], w[0]) == v.mzero()),
];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_algebra::{cyclic_group, module_self, ring_zn};
    use crate::mcq::mcq_from_group;

    #[test]
    fn scopes_enumerate_in_lexicographic_order() {
        let x = crate::mcq::FiniteMCQ::from_groups(
            vec![cyclic_group(2).unwrap(), cyclic_group(1).unwrap()],
            (0..3).flat_map(|a| std::iter::repeat(a).take(3)).collect(),
        )
        .unwrap();
        let counts = [
            (Points, 3),
            (Pairs, 9),
            (Triples, 27),
            (CompPairs, 5),
            (CompTriples, 9),
            (PointIdentities, 6),
            (IdentityPoints, 6),
            (PointCompPairs, 15),
            (CompPairPoints, 15),
        ];
        for (scope, want) in counts {
            let mut seen: Vec<Vec<usize>> = Vec::new();
            let _ = scope.for_each(&x, |w| {
                seen.push(w.to_vec());
                ControlFlow::Continue(())
            });
            assert_eq!(seen.len(), want, "{scope:?}");
            assert!(seen.windows(2).all(|p| p[0] < p[1]), "{scope:?}");
        }
    }

    #[test]
    fn recorder_sees_every_read() {
        let x = mcq_from_group(&cyclic_group(2).unwrap());
        let r = ring_zn(2).unwrap();
        let m = module_self(&r);
        let frame = Frame::new(&x);
        assert_eq!(frame.len(), 6 * 4);
        let rec = Recorder {
            frame: &frame,
            touched: Default::default(),
        };
        let c = Ctx { x: &x, r: &r, m: &m };
        TUPLE[0].holds(c, &rec, &[0, 1]);
        assert_eq!(
            *rec.touched.borrow(),
            vec![frame.index(Slot::F3, 0, 1), frame.index(Slot::F4, 0, 1)]
        );
    }
}
