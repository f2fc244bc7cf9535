//! Affine 6-tuples `(f1, f2, f3, f4; φ1, φ2)`, their extensions, the
//! equivalence `~_{h,η}` and the reduction to augmented pairs.
//!
//! Condition tags run `(0-i)` … `(4-φ)`; the component conditions `(0-*)`
//! and `(1-*)` quantify over one component, `(2-*)` and `(4-*)` mix a point
//! with a component pair, and `(3-*)` ranges over triples of points.
//!
//! Equivalence relations, with `t1 = (f…)` and `t2 = (g…)`:
//!
//! | tag | relation |
//! |-----|----------|
//! | eq-f1 | `h(x◁y) f1(x,y) = g1(x,y) h(x)` |
//! | eq-f2 | `h(x◁y) f2(x,y) = g2(x,y) h(y)` |
//! | eq-phi1 | `h(x◁y) φ1(x,y) + η(x◁y) = g1(x,y) η(x) + g2(x,y) η(y) + ψ1(x,y)` |
//! | eq-f3 | `h(ab) f3(a,b) = g3(a,b) h(a)` |
//! | eq-f4 | `h(ab) f4(a,b) = g4(a,b) h(b)` |
//! | eq-phi2 | `h(ab) φ2(a,b) + η(ab) = g3(a,b) η(a) + g4(a,b) η(b) + ψ2(a,b)` |

use std::sync::Arc;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::alexander_pairs::{build_extension_augmented, pair_is_augmented_alexander, AugmentedPair, ConverseReport};
use crate::conditions::search::{solve, Problem};
use crate::conditions::{self, ConditionVerdict, Slot, ALT_ONE_II, ONE_II, TUPLE, TUPLE_DERIVED};
use crate::error::{Error, Result, Verdict, Violation};
use crate::extension::{candidate, check_identities, finish, Extension, Law};
use crate::finite_algebra::{Codomain, Domain, MapTable};
use crate::mcq::{check_mcq_hom, verify_mcq, RawMcq};
use crate::setting::{same_setting, Setting};

/// Six coefficient maps over one setting, with no conditions assumed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SixTuple {
    setting: Arc<Setting>,
    maps: [MapTable; 6],
}

impl SixTuple {
    /// Maps in the order `f1, f2, f3, f4, phi1, phi2`.
    pub fn new(setting: Arc<Setting>, maps: [MapTable; 6]) -> Result<Self> {
        for (s, m) in Slot::ALL.iter().zip(&maps) {
            setting.check_shape(*s, m)?;
        }
        Ok(Self { setting, maps })
    }

    /// `(1, 0, 1, 1; 0, 0)`
    pub fn trivial(setting: Arc<Setting>) -> Self {
        let (one, zero, mz) = (setting.ring().one(), setting.ring().zero(), setting.module().zero());
        let maps = [
            setting.constant(Slot::F1, one),
            setting.constant(Slot::F2, zero),
            setting.constant(Slot::F3, one),
            setting.constant(Slot::F4, one),
            setting.constant(Slot::Phi1, mz),
            setting.constant(Slot::Phi2, mz),
        ];
        Self { setting, maps }
    }

    pub(crate) fn from_flat(setting: Arc<Setting>, flat: &[usize]) -> Self {
        let maps = Slot::ALL.map(|s| setting.slot_map(s, flat));
        Self { setting, maps }
    }

    pub(crate) fn flat(&self) -> Vec<usize> {
        let [a, b, c, d, e, f] = &self.maps;
        self.setting.flatten([a, b, c, d, e, f])
    }

    pub fn setting(&self) -> &Arc<Setting> {
        &self.setting
    }

    pub fn map(&self, s: Slot) -> &MapTable {
        &self.maps[s as usize]
    }

    /// Replaces one map; the shape must match the slot.
    pub fn with_map(mut self, s: Slot, m: MapTable) -> Result<Self> {
        self.setting.check_shape(s, &m)?;
        self.maps[s as usize] = m;
        Ok(self)
    }

    fn get(&self, s: Slot, a: usize, b: usize) -> usize {
        self.maps[s as usize].at2(a, b)
    }
}

/// `h: X → R^×` and `η: X → M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceWitness {
    pub h: MapTable,
    pub eta: MapTable,
}

impl EquivalenceWitness {
    /// Checks shapes only; unit values are checked where the witness is used.
    pub fn new(setting: &Setting, h: MapTable, eta: MapTable) -> Result<Self> {
        let n = setting.mcq().order();
        let ok = h.domain() == &Domain::Points(n)
            && h.codomain() == Codomain::Ring(setting.ring().order())
            && eta.domain() == &Domain::Points(n)
            && eta.codomain() == Codomain::Module(setting.module().order());
        if !ok {
            return Err(Error::InvalidWitness("h must map X to R and eta X to M".into()));
        }
        Ok(Self { h, eta })
    }

    /// `h ≡ 1`, `η ≡ 0`.
    pub fn identity(setting: &Setting) -> Self {
        let n = setting.mcq().order();
        Self {
            h: MapTable::constant(Domain::Points(n), Codomain::Ring(setting.ring().order()), setting.ring().one()),
            eta: MapTable::constant(Domain::Points(n), Codomain::Module(setting.module().order()), setting.module().zero()),
        }
    }

    /// Uniform unit-valued `h` and uniform `η`.
    pub fn random<G: Rng + ?Sized>(setting: &Setting, rng: &mut G) -> Self {
        let units = setting.ring().units();
        let (n, k) = (setting.mcq().order(), setting.module().order());
        Self {
            h: MapTable::from_points(n, Codomain::Ring(setting.ring().order()), |_| units[rng.gen_range(0..units.len())]),
            eta: MapTable::from_points(n, Codomain::Module(k), |_| rng.gen_range(0..k)),
        }
    }

    pub fn seeded(setting: &Setting, seed: u64) -> Self {
        Self::random(setting, &mut ChaCha8Rng::seed_from_u64(seed))
    }

    fn check_units(&self, setting: &Setting) -> Result<()> {
        match (0..self.h.values().len()).find(|&x| !setting.ring().is_unit(self.h.at(x))) {
            Some(x) => Err(Error::InvalidWitness(format!("h({x}) = {} is not a unit", self.h.at(x)))),
            None => Ok(()),
        }
    }

    /// `(h⁻¹, −h⁻¹η)`, witnessing `t2 ~ t1` when `self` witnesses `t1 ~ t2`.
    pub fn inverse(&self, setting: &Setting) -> Result<Self> {
        self.check_units(setting)?;
        let (r, m) = (setting.ring(), setting.module());
        let n = setting.mcq().order();
        let hi = |x| r.unit_inverse(self.h.at(x)).expect("unit");
        Ok(Self {
            h: MapTable::from_points(n, self.h.codomain(), hi),
            eta: MapTable::from_points(n, self.eta.codomain(), |x| m.neg(m.act(hi(x), self.eta.at(x)))),
        })
    }

    /// `self` followed by `next`: `(h' h, h' η + η')`.
    pub fn then(&self, next: &Self, setting: &Setting) -> Self {
        let (r, m) = (setting.ring(), setting.module());
        let n = setting.mcq().order();
        Self {
            h: MapTable::from_points(n, self.h.codomain(), |x| r.mul(next.h.at(x), self.h.at(x))),
            eta: MapTable::from_points(n, self.eta.codomain(), |x| {
                m.add(m.act(next.h.at(x), self.eta.at(x)), next.eta.at(x))
            }),
        }
    }
}

fn tables(t: &SixTuple) -> (Vec<usize>, Arc<Setting>) {
    (t.flat(), t.setting.clone())
}

/// Scans the 22 conditions in tag order.
pub fn verify_six_tuple(t: &SixTuple) -> Verdict {
    let (flat, s) = tables(t);
    conditions::first_violation(&TUPLE, s.ctx(), &s.tables(&flat))
}

/// One verdict per condition, in tag order.
pub fn six_tuple_report(t: &SixTuple) -> Vec<ConditionVerdict> {
    let (flat, s) = tables(t);
    conditions::report(&TUPLE, s.ctx(), &s.tables(&flat))
}

/// The replacement for `(1-ii)`:
/// `f2(a,b) = −f3(b⁻¹,ab) f4(b⁻¹,e_λ) f3(b,b⁻¹) + f4(b⁻¹,ab) f4(a,b)`.
pub fn verify_alt_1ii(t: &SixTuple) -> Verdict {
    let (flat, s) = tables(t);
    ALT_ONE_II.first_violation(s.ctx(), &s.tables(&flat)).into()
}

/// Every condition except `(1-ii)`.
pub fn verify_without_1ii(t: &SixTuple) -> Verdict {
    let (flat, s) = tables(t);
    let tb = s.tables(&flat);
    TUPLE
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != ONE_II)
        .find_map(|(_, c)| c.first_violation(s.ctx(), &tb))
        .into()
}

/// Checks `f3(a,e_λ) = 1 = f4(e_λ,a)`, `f3(a,b)⁻¹ = f3(ab,b⁻¹)`,
/// `f4(a,b)⁻¹ = f4(a⁻¹,ab)` and `φ1(x,x) = 0` on a verified tuple.
pub fn verify_six_tuple_properties(t: &SixTuple) -> Result<Verdict> {
    if let Verdict::Fail(v) = verify_six_tuple(t) {
        return Err(Error::Precondition(v));
    }
    let (flat, s) = tables(t);
    if let Verdict::Fail(v) = conditions::first_violation(&TUPLE_DERIVED, s.ctx(), &s.tables(&flat)) {
        return Err(Error::Inconsistency(format!("tuple passes every condition but {v}")));
    }
    Ok(Verdict::Pass)
}

/// The candidate structure for arbitrary data, without any check.
pub fn affine_candidate(t: &SixTuple) -> RawMcq {
    let (flat, s) = tables(t);
    candidate(&s, &s.tables(&flat), Law::Affine)
}

/// Builds `⊔ (G_λ × M)` with
/// `(x,u) ◁ (y,v) = (x◁y, f1(x,y)u + f2(x,y)v + φ1(x,y))` and
/// `(a,u)(b,v) = (ab, f3(a,b)u + f4(a,b)v + φ2(a,b))`.
///
/// Also checks the identity `(e_λ, −φ2(e_λ,e_λ))` and the inverse
/// `(a⁻¹, −f3(e_λ,a⁻¹)(f4(a⁻¹,a)u + φ2(a⁻¹,a) + φ2(e_λ,e_λ)))`.
pub fn build_affine_extension(t: &SixTuple) -> Result<Extension> {
    if let Verdict::Fail(v) = verify_six_tuple(t) {
        return Err(Error::Precondition(v));
    }
    let (flat, s) = tables(t);
    let tb = s.tables(&flat);
    let ext = finish(&s, &candidate(&s, &tb, Law::Affine))?;
    check_identities(&s, &tb, &ext)?;
    let (x, m) = (s.mcq(), s.module());
    for a in 0..x.order() {
        let (ai, e) = (x.inv(a), x.identity_of(a));
        for u in 0..m.order() {
            let inner = m.add(
                m.add(m.act(t.get(Slot::F4, ai, a), u), t.get(Slot::Phi2, ai, a)),
                t.get(Slot::Phi2, e, e),
            );
            let want = ext.element(ai, m.neg(m.act(t.get(Slot::F3, e, ai), inner)));
            let got = ext.mcq.inv(ext.element(a, u));
            if got != want {
                return Err(Error::Inconsistency(format!(
                    "inverse of ({a}, {u}) is {got}, the closed form gives {want}"
                )));
            }
        }
    }
    Ok(ext)
}

/// With `M = R`, the candidate is an MCQ exactly when the tuple passes all
/// 22 conditions. A disagreement is an [`Error::Inconsistency`].
pub fn check_converse_six_tuple(t: &SixTuple) -> Result<ConverseReport> {
    if !t.setting.is_regular() {
        return Err(Error::InvalidArgument("the converse needs M = R".into()));
    }
    let rep = ConverseReport {
        mcq: verify_mcq(&affine_candidate(t))?,
        conditions: verify_six_tuple(t),
    };
    if !rep.agree() {
        return Err(Error::Inconsistency(format!(
            "candidate MCQ verdict {} but condition verdict {}",
            rep.mcq, rep.conditions
        )));
    }
    Ok(rep)
}

/// `(f1, f2, 1, f1(a,a⁻¹); φ1, φ2)`.
pub fn embed_pair_as_tuple(c: &AugmentedPair) -> Result<SixTuple> {
    if let Verdict::Fail(v) = pair_is_augmented_alexander(c) {
        return Err(Error::Precondition(v));
    }
    Ok(SixTuple::from_flat(c.setting().clone(), &c.flat()))
}

type Rel<'a> = (&'static str, bool, Box<dyn Fn(&[usize]) -> bool + 'a>);

/// Checks the six relations of `t1 ~_{h,η} t2` in table order; the first
/// failing relation is reported with its witness.
pub fn check_equivalence(t1: &SixTuple, t2: &SixTuple, w: &EquivalenceWitness) -> Result<Verdict> {
    same_setting(&t1.setting, &t2.setting)?;
    let s = &t1.setting;
    EquivalenceWitness::new(s, w.h.clone(), w.eta.clone())?;
    w.check_units(s)?;
    let (x, r, m) = (s.mcq(), s.ring(), s.module());
    let (h, eta) = (|p| w.h.at(p), |p| w.eta.at(p));
    let f = |k, a, b| t1.get(k, a, b);
    let g = |k, a, b| t2.get(k, a, b);
    use Slot::*;
    // (tag, over all pairs, relation at [a, b])
    let rels: [Rel; 6] = [
        ("eq-f1", true, Box::new(|w| {
            let (a, b) = (w[0], w[1]);
            r.mul(h(x.tri(a, b)), f(F1, a, b)) == r.mul(g(F1, a, b), h(a))
        })),
        ("eq-f2", true, Box::new(|w| {
            let (a, b) = (w[0], w[1]);
            r.mul(h(x.tri(a, b)), f(F2, a, b)) == r.mul(g(F2, a, b), h(b))
        })),
        ("eq-phi1", true, Box::new(|w| {
            let (a, b) = (w[0], w[1]);
            let c = x.tri(a, b);
            let lhs = m.add(m.act(h(c), f(Phi1, a, b)), eta(c));
            let rhs = m.add(m.add(m.act(g(F1, a, b), eta(a)), m.act(g(F2, a, b), eta(b))), g(Phi1, a, b));
            lhs == rhs
        })),
        ("eq-f3", false, Box::new(|w| {
            let (a, b) = (w[0], w[1]);
            r.mul(h(x.mul(a, b)), f(F3, a, b)) == r.mul(g(F3, a, b), h(a))
        })),
        ("eq-f4", false, Box::new(|w| {
            let (a, b) = (w[0], w[1]);
            r.mul(h(x.mul(a, b)), f(F4, a, b)) == r.mul(g(F4, a, b), h(b))
        })),
        ("eq-phi2", false, Box::new(|w| {
            let (a, b) = (w[0], w[1]);
            let c = x.mul(a, b);
            let lhs = m.add(m.act(h(c), f(Phi2, a, b)), eta(c));
            let rhs = m.add(m.add(m.act(g(F3, a, b), eta(a)), m.act(g(F4, a, b), eta(b))), g(Phi2, a, b));
            lhs == rhs
        })),
    ];
    for (tag, all, rel) in &rels {
        for a in 0..x.order() {
            let bs = if *all { 0..x.order() } else { x.layout().range(x.component_of(a)) };
            for b in bs {
                if !rel(&[a, b]) {
                    return Ok(Verdict::Fail(Violation::new(*tag, &[a, b])));
                }
            }
        }
    }
    Ok(Verdict::Pass)
}

/// The tuple `t2` with `t ~_{h,η} t2`, solving each relation for the
/// `g` side.
pub fn transport_six_tuple(t: &SixTuple, w: &EquivalenceWitness) -> Result<SixTuple> {
    if let Verdict::Fail(v) = verify_six_tuple(t) {
        return Err(Error::Precondition(v));
    }
    let s = &t.setting;
    EquivalenceWitness::new(s, w.h.clone(), w.eta.clone())?;
    w.check_units(s)?;
    let (x, r, m) = (s.mcq(), s.ring(), s.module());
    let h = |p| w.h.at(p);
    let hi = |p| r.unit_inverse(w.h.at(p)).expect("unit");
    let eta = |p| w.eta.at(p);
    use Slot::*;
    // coefficient for slot k at (a, b): h(c) f h(first or second)⁻¹
    let coef = |k: Slot, a: usize, b: usize, c: usize, side: usize| r.mul(r.mul(h(c), t.get(k, a, b)), hi(side));
    let g1 = s.tabulate(F1, |a, b| coef(F1, a, b, x.tri(a, b), a));
    let g2 = s.tabulate(F2, |a, b| coef(F2, a, b, x.tri(a, b), b));
    let g3 = s.tabulate(F3, |a, b| coef(F3, a, b, x.mul(a, b), a));
    let g4 = s.tabulate(F4, |a, b| coef(F4, a, b, x.mul(a, b), b));
    let psi = |k: Slot, a: usize, b: usize, c: usize, ga: usize, gb: usize| {
        let lhs = m.add(m.act(h(c), t.get(k, a, b)), eta(c));
        m.sub(m.sub(lhs, m.act(ga, eta(a))), m.act(gb, eta(b)))
    };
    let psi1 = s.tabulate(Phi1, |a, b| psi(Phi1, a, b, x.tri(a, b), g1.at2(a, b), g2.at2(a, b)));
    let psi2 = s.tabulate(Phi2, |a, b| psi(Phi2, a, b, x.mul(a, b), g3.at2(a, b), g4.at2(a, b)));
    Ok(SixTuple {
        setting: s.clone(),
        maps: [g1, g2, g3, g4, psi1, psi2],
    })
}

/// `(x, u) ↦ (x, h(x)u + η(x))` between the extensions of `t1` and `t2`.
pub fn induced_isomorphism(t1: &SixTuple, t2: &SixTuple, w: &EquivalenceWitness) -> Result<MapTable> {
    if let Verdict::Fail(v) = check_equivalence(t1, t2, w)? {
        return Err(Error::Precondition(v));
    }
    let s = &t1.setting;
    let (m, k) = (s.module(), s.module().order());
    let n = s.mcq().order() * k;
    Ok(MapTable::from_points(n, Codomain::Carrier(n), |p| {
        let (x, u) = (p / k, p % k);
        x * k + m.add(m.act(w.h.at(x), u), w.eta.at(x))
    }))
}

/// An augmented pair equivalent to a tuple, with the witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    pub pair: AugmentedPair,
    pub witness: EquivalenceWitness,
}

/// `g1(x,y) = f1(e_x,y)`,
/// `g2(x,y) = f3(x◁y, x⁻¹◁y) f2(x,y) f3(e_y,y)`,
/// `ψ1(x,y) = f3(x◁y, x⁻¹◁y) φ1(x,y)`,
/// `ψ2(a,b) = f3(ab, b⁻¹a⁻¹) φ2(a,b)`, with witness `h(x) = f3(x,x⁻¹)`, `η = 0`.
pub fn reduce_six_tuple(t: &SixTuple) -> Result<Reduction> {
    if let Verdict::Fail(v) = verify_six_tuple(t) {
        return Err(Error::Precondition(v));
    }
    let s = &t.setting;
    let (x, r, m) = (s.mcq(), s.ring(), s.module());
    use Slot::*;
    let g1 = s.tabulate(F1, |a, b| t.get(F1, x.identity_of(a), b));
    let lead = |a: usize, b: usize| t.get(F3, x.tri(a, b), x.tri(x.inv(a), b));
    let g2 = s.tabulate(F2, |a, b| r.product(&[lead(a, b), t.get(F2, a, b), t.get(F3, x.identity_of(b), b)]));
    let psi1 = s.tabulate(Phi1, |a, b| m.act(lead(a, b), t.get(Phi1, a, b)));
    let psi2 = s.tabulate(Phi2, |a, b| {
        let ab = x.mul(a, b);
        m.act(t.get(F3, ab, x.inv(ab)), t.get(Phi2, a, b))
    });
    let n = x.order();
    let witness = EquivalenceWitness {
        h: MapTable::from_points(n, Codomain::Ring(r.order()), |p| t.get(F3, p, x.inv(p))),
        eta: MapTable::constant(Domain::Points(n), Codomain::Module(m.order()), m.zero()),
    };
    Ok(Reduction {
        pair: AugmentedPair::new(s.clone(), g1, g2, psi1, psi2)?,
        witness,
    })
}

/// Everything needed to re-verify a reduction without the original files.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub tuple: SixTuple,
    pub reduced: AugmentedPair,
    pub witness: EquivalenceWitness,
    pub tuple_conditions: Vec<ConditionVerdict>,
    pub reduced_conditions: Vec<ConditionVerdict>,
    pub equivalence: Verdict,
    /// `(x, u) ↦ (x, h(x)u)`, from the tuple's extension to the pair's.
    pub isomorphism: MapTable,
}

/// Per-step outcome of [`Certificate::recheck`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecheckReport {
    pub tuple: Verdict,
    pub reduced: Verdict,
    pub normal_form: bool,
    pub equivalence: Verdict,
    pub isomorphism: bool,
    pub commutes_with_projection: bool,
}

impl RecheckReport {
    pub fn is_pass(&self) -> bool {
        self.tuple.is_pass()
            && self.reduced.is_pass()
            && self.normal_form
            && self.equivalence.is_pass()
            && self.isomorphism
            && self.commutes_with_projection
    }
}

impl Certificate {
    /// Re-verifies every claim from the stored tables alone.
    pub fn recheck(&self) -> Result<RecheckReport> {
        same_setting(self.tuple.setting(), self.reduced.setting())?;
        let embedded = SixTuple::from_flat(self.reduced.setting().clone(), &self.reduced.flat());
        let reduced = pair_is_augmented_alexander(&self.reduced);
        let mut rep = RecheckReport {
            tuple: verify_six_tuple(&self.tuple),
            normal_form: reduced.is_pass() && verify_six_tuple(&embedded).is_pass(),
            reduced,
            equivalence: check_equivalence(&self.tuple, &embedded, &self.witness)?,
            isomorphism: false,
            commutes_with_projection: false,
        };
        if !(rep.tuple.is_pass() && rep.reduced.is_pass()) {
            return Ok(rep);
        }
        let e1 = build_affine_extension(&self.tuple)?;
        let e2 = build_extension_augmented(&self.reduced)?;
        let hom = check_mcq_hom(&self.isomorphism, &e1.mcq, &e2.mcq)?;
        rep.isomorphism = hom.is_isomorphism();
        let k = e1.fiber_size;
        rep.commutes_with_projection = (0..e1.mcq.order()).all(|p| self.isomorphism.at(p) / k == p / k);
        Ok(rep)
    }
}

/// Reduces a verified tuple, builds both extensions and the induced
/// isomorphism, and checks every step. The tuple must pass
/// [`verify_six_tuple`]; any later failure is an [`Error::Inconsistency`].
pub fn certify_reduction(t: &SixTuple) -> Result<Certificate> {
    let red = reduce_six_tuple(t)?;
    let bug = |what: String| Error::Inconsistency(format!("reduction: {what}"));
    if let Verdict::Fail(v) = pair_is_augmented_alexander(&red.pair) {
        return Err(bug(format!("reduced quadruple fails {v}")));
    }
    let embedded = embed_pair_as_tuple(&red.pair)?;
    let s = t.setting();
    let x = s.mcq();
    let g1 = red.pair.f1();
    let normal = (0..x.order()).all(|a| {
        x.layout().range(x.component_of(a)).all(|b| {
            embedded.get(Slot::F3, a, b) == s.ring().one() && embedded.get(Slot::F4, a, b) == g1.at2(a, x.inv(a))
        })
    });
    if !normal {
        return Err(bug("g3 is not 1 or g4(a,b) differs from g1(a,a⁻¹)".into()));
    }
    if let Verdict::Fail(v) = verify_six_tuple(&embedded) {
        return Err(bug(format!("reduced tuple fails {v}")));
    }
    let equivalence = check_equivalence(t, &embedded, &red.witness)?;
    if let Verdict::Fail(v) = &equivalence {
        return Err(bug(format!("witness fails {v}")));
    }
    let e1 = build_affine_extension(t)?;
    let e2 = build_extension_augmented(&red.pair)?;
    if build_affine_extension(&embedded)? != e2 {
        return Err(bug("affine and augmented constructions of the reduced pair differ".into()));
    }
    let iso = induced_isomorphism(t, &embedded, &red.witness)?;
    let hom = check_mcq_hom(&iso, &e1.mcq, &e2.mcq)?;
    if !hom.is_isomorphism() {
        return Err(bug(format!("induced map is not an isomorphism: {}", hom.verdict)));
    }
    let k = e1.fiber_size;
    if (0..e1.mcq.order()).any(|p| iso.at(p) / k != p / k) {
        return Err(bug("induced map moves a fibre".into()));
    }
    Ok(Certificate {
        tuple_conditions: six_tuple_report(t),
        reduced_conditions: crate::alexander_pairs::augmented_report(&red.pair),
        tuple: t.clone(),
        reduced: red.pair,
        witness: red.witness,
        equivalence,
        isomorphism: iso,
    })
}

/// Every tuple passing all 22 conditions, sorted by flattened tables.
pub fn enumerate_six_tuples(setting: &Arc<Setting>, node_budget: u64) -> Result<Vec<SixTuple>> {
    let conds: Vec<_> = TUPLE.iter().collect();
    enumerate_with(setting, conds, node_budget)
}

fn enumerate_with(setting: &Arc<Setting>, conds: Vec<&'static conditions::Cond>, budget: u64) -> Result<Vec<SixTuple>> {
    let frame = setting.frame();
    let p = Problem {
        ctx: setting.ctx(),
        frame,
        conds,
        order: (0..frame.len()).collect(),
        base: vec![0; frame.len()],
        domains: frame.domains(setting.ring(), setting.module()),
    };
    Ok(solve(&p, budget)?
        .tables
        .iter()
        .map(|t| SixTuple::from_flat(setting.clone(), t))
        .collect())
}

/// Outcome of comparing `(1-ii)` with its replacement over every tuple
/// that passes the other 21 conditions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneIiScan {
    pub candidates: usize,
    pub passing_both: usize,
    pub disagreements: Vec<SixTuple>,
}

pub fn scan_alt_1ii(setting: &Arc<Setting>, node_budget: u64) -> Result<OneIiScan> {
    let conds = TUPLE.iter().enumerate().filter(|(i, _)| *i != ONE_II).map(|(_, c)| c).collect();
    let all = enumerate_with(setting, conds, node_budget)?;
    let (flat_ok, ctx) = (|t: &SixTuple| t.flat(), setting.ctx());
    let mut out = OneIiScan {
        candidates: all.len(),
        passing_both: 0,
        disagreements: Vec::new(),
    };
    for t in all {
        let flat = flat_ok(&t);
        let tb = setting.tables(&flat);
        let one = TUPLE[ONE_II].first_violation(ctx, &tb).is_none();
        let alt = ALT_ONE_II.first_violation(ctx, &tb).is_none();
        if one != alt {
            out.disagreements.push(t);
        } else if one {
            out.passing_both += 1;
        }
    }
    Ok(out)
}
