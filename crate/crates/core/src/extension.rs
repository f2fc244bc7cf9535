//! The structures `⊔ (G_λ × M)` built from coefficient maps.
//!
//! The element `(x, u)` has global index `x·|M| + u`, so the component over
//! `G_λ` is the contiguous block of the elements of `G_λ`, each followed by
//! its `|M|` module values.

use crate::conditions::Tables;
use crate::error::{Error, Result};
use crate::finite_algebra::{Codomain, MapTable, RawGroup};
use crate::mcq::{check_mcq_hom, FiniteMCQ, RawMcq};
use crate::setting::Setting;

/// A built extension together with its projection onto `X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extension {
    pub mcq: FiniteMCQ,
    pub projection: MapTable,
    pub fiber_size: usize,
}

impl Extension {
    /// Global index of `(x, u)`.
    pub fn element(&self, x: usize, u: usize) -> usize {
        x * self.fiber_size + u
    }

    /// `(x, u)` of a global index.
    pub fn split(&self, p: usize) -> (usize, usize) {
        (p / self.fiber_size, p % self.fiber_size)
    }
}

/// Which group law the components get.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Law {
    /// `(a,u)(b,v) = (ab, u + f1(a,a⁻¹)v + φ2(a,b))`
    Augmented,
    /// `(a,u)(b,v) = (ab, f3(a,b)u + f4(a,b)v + φ2(a,b))`
    Affine,
}

/// Tabulates the candidate structure without checking any axiom. The
/// identity of each candidate component is located from its table (or
/// left as local `0` when there is none).
pub(crate) fn candidate(setting: &Setting, t: &dyn Tables, law: Law) -> RawMcq {
    use crate::conditions::Slot::*;
    let (x, r, m) = (setting.mcq(), setting.ring(), setting.module());
    let k = m.order();
    let l = x.layout();
    let mut components = Vec::with_capacity(l.num_components());
    for c in 0..l.num_components() {
        let off = l.offset(c);
        let s = l.size(c) * k;
        let mut table = vec![Vec::with_capacity(s); s];
        for (i, row) in table.iter_mut().enumerate() {
            let (a, u) = (off + i / k, i % k);
            for j in 0..s {
                let (b, v) = (off + j / k, j % k);
                let (cu, cv) = match law {
                    Law::Augmented => (r.one(), t.get(F1, a, x.inv(a))),
                    Law::Affine => (t.get(F3, a, b), t.get(F4, a, b)),
                };
                let w = m.add(m.add(m.act(cu, u), m.act(cv, v)), t.get(Phi2, a, b));
                row.push((x.mul(a, b) - off) * k + w);
            }
        }
        components.push(RawGroup::with_located_identity(table));
    }
    let n = x.order() * k;
    let triangle = (0..n)
        .map(|p| {
            let (a, u) = (p / k, p % k);
            (0..n)
                .map(|q| {
                    let (b, v) = (q / k, q % k);
                    let w = m.add(
                        m.add(m.act(t.get(F1, a, b), u), m.act(t.get(F2, a, b), v)),
                        t.get(Phi1, a, b),
                    );
                    x.tri(a, b) * k + w
                })
                .collect()
        })
        .collect();
    RawMcq {
        components,
        triangle,
    }
}

/// Verifies a candidate that the conditions guarantee to be an MCQ and an
/// extension; any failure is an internal inconsistency.
pub(crate) fn finish(setting: &Setting, raw: &RawMcq) -> Result<Extension> {
    let mcq = FiniteMCQ::from_raw(raw).map_err(|e| match e {
        Error::Axiom(v) => Error::Inconsistency(format!("extension is not an MCQ: {v}")),
        other => other,
    })?;
    let k = setting.module().order();
    let n = setting.mcq().order();
    let projection = MapTable::from_points(n * k, Codomain::Carrier(n), |p| p / k);
    let rep = check_mcq_hom(&projection, &mcq, setting.mcq())?;
    if !rep.is_extension() || rep.fiber_size != Some(k) {
        return Err(Error::Inconsistency(format!(
            "projection is not an extension with fibres of size {k}: {}",
            rep.verdict
        )));
    }
    Ok(Extension {
        mcq,
        projection,
        fiber_size: k,
    })
}

/// Checks that each component's identity is `(e_λ, −φ2(e_λ, e_λ))`.
pub(crate) fn check_identities(setting: &Setting, t: &dyn Tables, ext: &Extension) -> Result<()> {
    let (x, m) = (setting.mcq(), setting.module());
    for c in 0..x.num_components() {
        let e = x.component_identity(c);
        let want = ext.element(e, m.neg(t.get(crate::conditions::Slot::Phi2, e, e)));
        let got = ext.mcq.component_identity(c);
        if got != want {
            return Err(Error::Inconsistency(format!(
                "component {c} has identity {got}, expected {want}"
            )));
        }
    }
    Ok(())
}
