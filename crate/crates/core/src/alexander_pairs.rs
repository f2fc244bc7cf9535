//! MCQ Alexander pairs `(f1, f2)`, twisted 2-cocycles `(phi1, phi2)` and the
//! extension `⊔ (G_λ × M)` they define.
//!
//! Pair conditions are tagged `A1`–`A9` and cocycle conditions `C1`–`C5`:
//!
//! | tag | equation |
//! |-----|----------|
//! | A1 | `f1(a,b) + f2(a,b) = f1(a, a⁻¹b)` |
//! | A2 | `f1(a,x) = f1(b,x)` |
//! | A3 | `f2(ab,x) = f2(a,x) + f1(b◁x, a⁻¹◁x) f2(b,x)` |
//! | A4 | `f1(x,e_λ) = 1` |
//! | A5 | `f1(x,ab) = f1(x◁a,b) f1(x,a)` |
//! | A6 | `f2(x,ab) = f1(x◁a,b) f2(x,a)` |
//! | A7 | `f1(x◁y,z) f1(x,y) = f1(x◁z,y◁z) f1(x,z)` |
//! | A8 | `f1(x◁y,z) f2(x,y) = f2(x◁z,y◁z) f1(y,z)` |
//! | A9 | `f2(x◁y,z) = f1(x◁z,y◁z) f2(x,z) + f2(x◁z,y◁z) f2(y,z)` |
//! | C1 | `φ2(a,b) + φ2(ab,c) = f1(a,a⁻¹) φ2(b,c) + φ2(a,bc)` |
//! | C2 | `f1(b,b⁻¹) φ1(a,b) + φ2(b,b⁻¹ab) = φ2(a,b)` |
//! | C3 | `f2(x,ab) φ2(a,b) + φ1(x,ab) = f1(x◁a,b) φ1(x,a) + φ1(x◁a,b)` |
//! | C4 | `f1(x◁y,z) φ1(x,y) + φ1(x◁y,z) = f1(x◁z,y◁z) φ1(x,z) + f2(x◁z,y◁z) φ1(y,z) + φ1(x◁z,y◁z)` |
//! | C5 | `f1(ab,x) φ2(a,b) + φ1(ab,x) = φ1(a,x) + f1(a◁x,a⁻¹◁x) φ1(b,x) + φ2(a◁x,b◁x)` |
//!
//! Here `a, b, c` range over one component, `x, y, z` over all of `X`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::conditions::search::{solve, Problem};
use crate::conditions::{self, ConditionVerdict, Slot, COCYCLE, COCYCLE_DERIVED, PAIR, PAIR_DERIVED};
use crate::error::{Error, Result, Verdict};
use crate::extension::{candidate, check_identities, finish, Extension, Law};
use crate::finite_algebra::{FiniteRing, MapTable};
use crate::mcq::{verify_mcq, FiniteMCQ};
use crate::setting::Setting;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlexanderPair {
    setting: Arc<Setting>,
    f1: MapTable,
    f2: MapTable,
}

impl AlexanderPair {
    pub fn new(setting: Arc<Setting>, f1: MapTable, f2: MapTable) -> Result<Self> {
        setting.check_shape(Slot::F1, &f1)?;
        setting.check_shape(Slot::F2, &f2)?;
        Ok(Self { setting, f1, f2 })
    }

    /// `(1, 0)`
    pub fn trivial(setting: Arc<Setting>) -> Self {
        let f1 = setting.constant(Slot::F1, setting.ring().one());
        let f2 = setting.constant(Slot::F2, setting.ring().zero());
        Self { setting, f1, f2 }
    }

    pub fn setting(&self) -> &Arc<Setting> {
        &self.setting
    }

    pub fn f1(&self) -> &MapTable {
        &self.f1
    }

    pub fn f2(&self) -> &MapTable {
        &self.f2
    }

    /// Pairs with the trivial cocycle `(0, 0)`.
    pub fn with_trivial_cocycle(&self) -> AugmentedPair {
        let z = self.setting.module().zero();
        AugmentedPair {
            phi1: self.setting.constant(Slot::Phi1, z),
            phi2: self.setting.constant(Slot::Phi2, z),
            setting: self.setting.clone(),
            f1: self.f1.clone(),
            f2: self.f2.clone(),
        }
    }

    fn flat(&self) -> Vec<usize> {
        self.with_trivial_cocycle().flat()
    }
}

/// An `(f1, f2)`-twisted 2-cocycle together with its pair.
pub type TwistedCocycle = AugmentedPair;

/// `(f1, f2; phi1, phi2)`, with no conditions assumed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AugmentedPair {
    setting: Arc<Setting>,
    f1: MapTable,
    f2: MapTable,
    phi1: MapTable,
    phi2: MapTable,
}

impl AugmentedPair {
    pub fn new(
        setting: Arc<Setting>,
        f1: MapTable,
        f2: MapTable,
        phi1: MapTable,
        phi2: MapTable,
    ) -> Result<Self> {
        setting.check_shape(Slot::F1, &f1)?;
        setting.check_shape(Slot::F2, &f2)?;
        setting.check_shape(Slot::Phi1, &phi1)?;
        setting.check_shape(Slot::Phi2, &phi2)?;
        Ok(Self {
            setting,
            f1,
            f2,
            phi1,
            phi2,
        })
    }

    /// `(1, 0; 0, 0)`
    pub fn trivial(setting: Arc<Setting>) -> Self {
        AlexanderPair::trivial(setting).with_trivial_cocycle()
    }

    pub fn setting(&self) -> &Arc<Setting> {
        &self.setting
    }

    pub fn f1(&self) -> &MapTable {
        &self.f1
    }

    pub fn f2(&self) -> &MapTable {
        &self.f2
    }

    pub fn phi1(&self) -> &MapTable {
        &self.phi1
    }

    pub fn phi2(&self) -> &MapTable {
        &self.phi2
    }

    pub fn pair(&self) -> AlexanderPair {
        AlexanderPair {
            setting: self.setting.clone(),
            f1: self.f1.clone(),
            f2: self.f2.clone(),
        }
    }

    /// The six tables with `f3 ≡ 1` and `f4(a,b) = f1(a,a⁻¹)`.
    pub(crate) fn flat(&self) -> Vec<usize> {
        let s = &self.setting;
        let x = s.mcq();
        let f3 = s.constant(Slot::F3, s.ring().one());
        let f4 = s.tabulate(Slot::F4, |a, _| self.f1.at2(a, x.inv(a)));
        s.flatten([&self.f1, &self.f2, &f3, &f4, &self.phi1, &self.phi2])
    }

    pub(crate) fn from_flat(setting: Arc<Setting>, flat: &[usize]) -> Self {
        Self {
            f1: setting.slot_map(Slot::F1, flat),
            f2: setting.slot_map(Slot::F2, flat),
            phi1: setting.slot_map(Slot::Phi1, flat),
            phi2: setting.slot_map(Slot::Phi2, flat),
            setting,
        }
    }
}

/// Scans the nine pair conditions in tag order.
pub fn verify_pair(p: &AlexanderPair) -> Verdict {
    let flat = p.flat();
    conditions::first_violation(&PAIR, p.setting.ctx(), &p.setting.tables(&flat))
}

/// Checks the consequences of the pair conditions: `f1(x,y)` is a unit
/// with inverse `f1(x◁y, y⁻¹)`, `f2(e_λ,x) = 0`,
/// `f1(ab,x) f1(a,a⁻¹) = f1(b◁x, a⁻¹◁x) f1(b,x)` and
/// `f2(x◁a,b) = f2(x,ab) f1(a,a⁻¹)`.
///
/// The pair must pass [`verify_pair`]; a failing consequence is reported
/// as [`Error::Inconsistency`].
pub fn verify_pair_properties(p: &AlexanderPair) -> Result<Verdict> {
    if let Verdict::Fail(v) = verify_pair(p) {
        return Err(Error::Precondition(v));
    }
    let flat = p.flat();
    if let Verdict::Fail(v) = conditions::first_violation(&PAIR_DERIVED, p.setting.ctx(), &p.setting.tables(&flat)) {
        return Err(Error::Inconsistency(format!("pair passes every condition but {v}")));
    }
    Ok(Verdict::Pass)
}

/// Scans the five cocycle conditions over a verified pair, then checks
/// `φ1(x,x) = 0` and `φ2(e_λ,a) = φ2(e_λ,b)`.
pub fn verify_cocycle(c: &AugmentedPair) -> Result<Verdict> {
    if let Verdict::Fail(v) = verify_pair(&c.pair()) {
        return Err(Error::Precondition(v));
    }
    let flat = c.flat();
    let t = c.setting.tables(&flat);
    let verdict = conditions::first_violation(&COCYCLE, c.setting.ctx(), &t);
    if verdict.is_pass() {
        if let Verdict::Fail(v) = conditions::first_violation(&COCYCLE_DERIVED, c.setting.ctx(), &t) {
            return Err(Error::Inconsistency(format!("cocycle passes every condition but {v}")));
        }
    }
    Ok(verdict)
}

/// Pair conditions, then cocycle conditions; first failure wins.
pub fn pair_is_augmented_alexander(c: &AugmentedPair) -> Verdict {
    let flat = c.flat();
    let t = c.setting.tables(&flat);
    let ctx = c.setting.ctx();
    match conditions::first_violation(&PAIR, ctx, &t) {
        Verdict::Pass => conditions::first_violation(&COCYCLE, ctx, &t),
        fail => fail,
    }
}

/// One verdict per pair and cocycle condition.
pub fn augmented_report(c: &AugmentedPair) -> Vec<ConditionVerdict> {
    let flat = c.flat();
    let t = c.setting.tables(&flat);
    let mut out = conditions::report(&PAIR, c.setting.ctx(), &t);
    out.extend(conditions::report(&COCYCLE, c.setting.ctx(), &t));
    out
}

/// Builds `⊔ (G_λ × M)` with
/// `(x,u) ◁ (y,v) = (x◁y, f1(x,y)u + f2(x,y)v + φ1(x,y))` and
/// `(a,u)(b,v) = (ab, u + f1(a,a⁻¹)v + φ2(a,b))`.
///
/// The element `(x, u)` has index `x·|M| + u`. The quadruple must be an
/// augmented pair; the result is checked to be an MCQ, to have identities
/// `(e_λ, −φ2(e_λ,e_λ))`, and to project onto `X` with fibres of size `|M|`.
pub fn build_extension_augmented(c: &AugmentedPair) -> Result<Extension> {
    if let Verdict::Fail(v) = pair_is_augmented_alexander(c) {
        return Err(Error::Precondition(v));
    }
    let flat = c.flat();
    let t = c.setting.tables(&flat);
    let ext = finish(&c.setting, &candidate(&c.setting, &t, Law::Augmented))?;
    check_identities(&c.setting, &t, &ext)?;
    Ok(ext)
}

/// The candidate structure for arbitrary data, without any check.
pub fn augmented_candidate(c: &AugmentedPair) -> crate::mcq::RawMcq {
    let flat = c.flat();
    candidate(&c.setting, &c.setting.tables(&flat), Law::Augmented)
}

/// Outcome of comparing the MCQ axioms of a candidate extension with the
/// condition system on its coefficient maps.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConverseReport {
    pub mcq: Verdict,
    pub conditions: Verdict,
}

impl ConverseReport {
    pub fn agree(&self) -> bool {
        self.mcq.is_pass() == self.conditions.is_pass()
    }
}

/// With `M = R`, the candidate is an MCQ exactly when the quadruple is an
/// augmented pair. Reports both verdicts.
pub fn check_converse_augmented(c: &AugmentedPair) -> Result<ConverseReport> {
    if !c.setting.is_regular() {
        return Err(Error::InvalidArgument("the converse needs M = R".into()));
    }
    Ok(ConverseReport {
        mcq: verify_mcq(&augmented_candidate(c))?,
        conditions: pair_is_augmented_alexander(c),
    })
}

/// Which closed form of the inverse matches the group tables of an
/// augmented extension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InverseForms {
    /// `(a⁻¹, −f1(a,a)u − φ2(a⁻¹,a) − φ2(e_λ,e_λ))`
    pub with_phi2_inv_a: bool,
    /// `(a⁻¹, −f1(a,a)u − φ2(a,a⁻¹) − φ2(e_λ,e_λ))`
    pub with_phi2_a_inv: bool,
    /// First `(a, u)` where the second form disagrees with the table.
    pub a_inv_mismatch: Option<(usize, usize)>,
}

/// Compares both closed inverse forms against inverses read off the built
/// group tables.
pub fn augmented_inverse_forms(c: &AugmentedPair) -> Result<InverseForms> {
    let ext = build_extension_augmented(c)?;
    let (x, m) = (c.setting.mcq(), c.setting.module());
    let f1 = |a, b| c.f1.at2(a, b);
    let p2 = |a, b| c.phi2.at2(a, b);
    let mut out = InverseForms {
        with_phi2_inv_a: true,
        with_phi2_a_inv: true,
        a_inv_mismatch: None,
    };
    for a in 0..x.order() {
        let (ai, e) = (x.inv(a), x.identity_of(a));
        for u in 0..m.order() {
            let table = ext.mcq.inv(ext.element(a, u));
            let base = m.neg(m.act(f1(a, a), u));
            let stated = m.sub(m.sub(base, p2(ai, a)), p2(e, e));
            let variant = m.sub(m.sub(base, p2(a, ai)), p2(e, e));
            out.with_phi2_inv_a &= table == ext.element(ai, stated);
            if table != ext.element(ai, variant) && out.a_inv_mismatch.is_none() {
                out.with_phi2_a_inv = false;
                out.a_inv_mismatch = Some((a, u));
            }
        }
    }
    Ok(out)
}

fn pair_space(n: usize, r: usize) -> Option<u64> {
    (0..2 * n * n).try_fold(1u64, |acc, _| acc.checked_mul(r as u64))
}

/// Every MCQ Alexander pair over `X` with values in `R`, sorted by the
/// flattened tables `(f1, f2)`.
///
/// The full candidate space `|R|^(2|X|²)` must not exceed `budget`; the
/// search itself prunes and visits far fewer nodes.
pub fn enumerate_pairs(x: &FiniteMCQ, ring: &FiniteRing, budget: u64) -> Result<Vec<AlexanderPair>> {
    let n = x.order();
    let space = pair_space(n, ring.order()).filter(|&s| s <= budget);
    if space.is_none() {
        return Err(Error::ResourceLimit {
            what: format!("pair candidate space {}^{}", ring.order(), 2 * n * n),
            budget,
        });
    }
    enumerate_pairs_pruned(Setting::regular(x.clone(), ring.clone()), budget)
}

/// Like [`enumerate_pairs`], but only the pruned search is bounded: at
/// most `node_budget` search nodes.
pub fn enumerate_pairs_pruned(setting: Arc<Setting>, node_budget: u64) -> Result<Vec<AlexanderPair>> {
    let frame = setting.frame();
    let order: Vec<usize> = frame.slot_range(Slot::F1).chain(frame.slot_range(Slot::F2)).collect();
    let p = Problem {
        ctx: setting.ctx(),
        frame,
        conds: PAIR.iter().collect(),
        order,
        base: vec![0; frame.len()],
        domains: frame.domains(setting.ring(), setting.module()),
    };
    let sols = solve(&p, node_budget)?;
    Ok(sols
        .tables
        .iter()
        .map(|t| AlexanderPair {
            f1: setting.slot_map(Slot::F1, t),
            f2: setting.slot_map(Slot::F2, t),
            setting: setting.clone(),
        })
        .collect())
}

/// Every `(f1, f2)`-twisted 2-cocycle with values in the pair's module,
/// sorted by the flattened tables `(phi1, phi2)`.
pub fn enumerate_cocycles(p: &AlexanderPair, node_budget: u64) -> Result<Vec<AugmentedPair>> {
    if let Verdict::Fail(v) = verify_pair(p) {
        return Err(Error::Precondition(v));
    }
    let s = &p.setting;
    let frame = s.frame();
    let order: Vec<usize> = frame.slot_range(Slot::Phi1).chain(frame.slot_range(Slot::Phi2)).collect();
    let problem = Problem {
        ctx: s.ctx(),
        frame,
        conds: COCYCLE.iter().collect(),
        order,
        base: p.flat(),
        domains: frame.domains(s.ring(), s.module()),
    };
    let sols = solve(&problem, node_budget)?;
    Ok(sols
        .tables
        .iter()
        .map(|t| AugmentedPair::from_flat(s.clone(), t))
        .collect())
}

/// Groups of indices into `list` whose extensions have identical tables.
/// Only groups with at least two members are returned.
pub fn extension_collisions(list: &[AugmentedPair]) -> Result<Vec<Vec<usize>>> {
    let mut seen: std::collections::HashMap<crate::mcq::RawMcq, Vec<usize>> = Default::default();
    for (i, c) in list.iter().enumerate() {
        let ext = build_extension_augmented(c)?;
        seen.entry(ext.mcq.to_raw()).or_default().push(i);
    }
    let mut groups: Vec<Vec<usize>> = seen.into_values().filter(|g| g.len() > 1).collect();
    groups.sort();
    Ok(groups)
}
