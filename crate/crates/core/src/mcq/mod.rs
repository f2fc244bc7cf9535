//! Finite multiple conjugation quandles (MCQs).
//!
//! An MCQ is a disjoint union of groups with one quandle operation `◁` on
//! the union. Components are concatenated: component `λ` owns the global
//! indices `offset(λ)..offset(λ) + |G_λ|`, and local index `i` of `G_λ` is
//! global index `offset(λ) + i`.

mod family;
mod hom;
mod iso;

pub use family::{
    associated_mcq, associated_projection, g_family_alexander, verify_g_family,
    z_family_from_quandle, GFamily,
};
pub use hom::check_mcq_hom;
pub use iso::{mcq_iso_search, IsoOutcome, IsoStats};

use crate::error::{flatten_table, malformed, unflatten, Result, Verdict, Violation};
use crate::finite_algebra::{group_axioms, ComponentLayout, FiniteGroup, RawGroup};
use crate::quandle::FiniteQuandle;

/// Component tables plus a global `◁` table, before verification.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RawMcq {
    pub components: Vec<RawGroup>,
    pub triangle: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteMCQ {
    components: Vec<FiniteGroup>,
    layout: ComponentLayout,
    triangle: Vec<usize>,
    inverse: Vec<usize>,
    identity_of: Vec<usize>,
}

/// Read-only view used by the axiom scan, so the scan can run on
/// candidates before a [`FiniteMCQ`] exists.
struct Parts<'a> {
    layout: &'a ComponentLayout,
    groups: &'a [FiniteGroup],
    triangle: &'a [usize],
}

impl Parts<'_> {
    fn tri(&self, x: usize, y: usize) -> usize {
        self.triangle[x * self.layout.order() + y]
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        let c = self.layout.component_of(a);
        let off = self.layout.offset(c);
        off + self.groups[c].mul(a - off, b - off)
    }

    fn inv(&self, a: usize) -> usize {
        let c = self.layout.component_of(a);
        let off = self.layout.offset(c);
        off + self.groups[c].inv(a - off)
    }

    fn identity(&self, c: usize) -> usize {
        self.layout.offset(c) + self.groups[c].identity()
    }

    fn axioms(&self) -> Verdict {
        let l = self.layout;
        let n = l.order();
        let fail = |name: &str, w: Vec<usize>| Verdict::Fail(Violation::new(name, w));

        for c in 0..l.num_components() {
            for a in l.range(c) {
                for b in l.range(c) {
                    if self.tri(a, b) != self.mul(self.mul(self.inv(b), a), b) {
                        return fail("M1", vec![a, b]);
                    }
                }
            }
        }
        for x in 0..n {
            for c in 0..l.num_components() {
                let e = self.identity(c);
                if self.tri(x, e) != x {
                    return fail("M2-identity", vec![x, e]);
                }
            }
        }
        for x in 0..n {
            for c in 0..l.num_components() {
                for a in l.range(c) {
                    let xa = self.tri(x, a);
                    for b in l.range(c) {
                        if self.tri(x, self.mul(a, b)) != self.tri(xa, b) {
                            return fail("M2-product", vec![x, a, b]);
                        }
                    }
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                let xy = self.tri(x, y);
                for z in 0..n {
                    if self.tri(xy, z) != self.tri(self.tri(x, z), self.tri(y, z)) {
                        return fail("M3", vec![x, y, z]);
                    }
                }
            }
        }
        for c in 0..l.num_components() {
            for a in l.range(c) {
                for b in l.range(c) {
                    for x in 0..n {
                        if !l.same_component(self.tri(a, x), self.tri(b, x)) {
                            return fail("M4-component", vec![a, b, x]);
                        }
                    }
                }
            }
        }
        for c in 0..l.num_components() {
            for a in l.range(c) {
                for b in l.range(c) {
                    for x in 0..n {
                        if self.tri(self.mul(a, b), x) != self.mul(self.tri(a, x), self.tri(b, x)) {
                            return fail("M4-product", vec![a, b, x]);
                        }
                    }
                }
            }
        }
        for y in 0..n {
            for c in 0..l.num_components() {
                let first = l.offset(c);
                let target = l.component_of(self.tri(first, y));
                let mut hit = vec![false; l.size(target)];
                for a in l.range(c) {
                    let img = self.tri(a, y);
                    if l.component_of(img) != target
                        || std::mem::replace(&mut hit[img - l.offset(target)], true)
                    {
                        return fail("column-components", vec![y, a]);
                    }
                }
                if hit.iter().any(|h| !h) {
                    return fail("column-components", vec![y, first]);
                }
            }
        }
        Verdict::Pass
    }
}

/// Parses the raw tables into flat form; malformed input is an error.
fn parse_raw(raw: &RawMcq) -> Result<(ComponentLayout, Vec<Vec<usize>>, Vec<usize>)> {
    if raw.components.is_empty() {
        return Err(malformed("an MCQ needs at least one component"));
    }
    let mut sizes = Vec::with_capacity(raw.components.len());
    let mut flats = Vec::with_capacity(raw.components.len());
    for (c, g) in raw.components.iter().enumerate() {
        let s = g.table.len();
        if s == 0 {
            return Err(malformed(format!("component {c} is empty")));
        }
        flats.push(flatten_table(&format!("component {c}"), &g.table, s, s, s)?);
        if g.identity >= s {
            return Err(malformed(format!("component {c}: identity {} out of range", g.identity)));
        }
        sizes.push(s);
    }
    let layout = ComponentLayout::from_sizes(sizes);
    let n = layout.order();
    let triangle = flatten_table("triangle", &raw.triangle, n, n, n)?;
    Ok((layout, flats, triangle))
}

/// Exhaustively checks a candidate MCQ: every component must be a group,
/// then the four MCQ axioms are scanned in order (M1, M2, M3, M4) together
/// with the requirement that each `x ↦ x ◁ y` maps components bijectively
/// onto components.
///
/// Group failures are reported as `G<λ>:<axiom>` with local witnesses; MCQ
/// failures carry global indices.
pub fn verify_mcq(raw: &RawMcq) -> Result<Verdict> {
    let (layout, flats, triangle) = parse_raw(raw)?;
    let mut groups = Vec::with_capacity(flats.len());
    for (c, (flat, g)) in flats.into_iter().zip(&raw.components).enumerate() {
        let s = layout.size(c);
        if let Verdict::Fail(v) = group_axioms(s, &flat, g.identity) {
            return Ok(Verdict::Fail(v.within(&format!("G{c}"))));
        }
        groups.push(FiniteGroup::from_flat_unchecked(s, flat, g.identity));
    }
    Ok(Parts {
        layout: &layout,
        groups: &groups,
        triangle: &triangle,
    }
    .axioms())
}

impl FiniteMCQ {
    /// Verifies and builds; axiom failures are [`crate::Error::Axiom`].
    pub fn from_raw(raw: &RawMcq) -> Result<Self> {
        verify_mcq(raw)?.into_result()?;
        let (layout, flats, triangle) = parse_raw(raw)?;
        let groups = flats
            .into_iter()
            .zip(&raw.components)
            .enumerate()
            .map(|(c, (flat, g))| FiniteGroup::from_flat_unchecked(layout.size(c), flat, g.identity))
            .collect();
        Ok(Self::assemble(groups, layout, triangle))
    }

    /// Verifies groups that are already known to be groups together with a
    /// flat triangle table.
    pub(crate) fn from_groups(groups: Vec<FiniteGroup>, triangle: Vec<usize>) -> Result<Self> {
        let layout = ComponentLayout::from_sizes(groups.iter().map(FiniteGroup::order).collect());
        if triangle.len() != layout.order() * layout.order() {
            return Err(malformed("triangle table has the wrong size"));
        }
        Parts {
            layout: &layout,
            groups: &groups,
            triangle: &triangle,
        }
        .axioms()
        .into_result()?;
        Ok(Self::assemble(groups, layout, triangle))
    }

    fn assemble(components: Vec<FiniteGroup>, layout: ComponentLayout, triangle: Vec<usize>) -> Self {
        let n = layout.order();
        let mut inverse = vec![0; n];
        let mut identity_of = vec![0; n];
        for (c, g) in components.iter().enumerate() {
            let off = layout.offset(c);
            for i in 0..g.order() {
                inverse[off + i] = off + g.inv(i);
                identity_of[off + i] = off + g.identity();
            }
        }
        Self {
            components,
            layout,
            triangle,
            inverse,
            identity_of,
        }
    }

    pub fn order(&self) -> usize {
        self.layout.order()
    }

    pub fn num_components(&self) -> usize {
        self.components.len()
    }

    pub fn component(&self, c: usize) -> &FiniteGroup {
        &self.components[c]
    }

    pub fn components(&self) -> &[FiniteGroup] {
        &self.components
    }

    pub fn layout(&self) -> &ComponentLayout {
        &self.layout
    }

    #[inline]
    pub fn component_of(&self, x: usize) -> usize {
        self.layout.component_of(x)
    }

    pub fn same_component(&self, a: usize, b: usize) -> bool {
        self.layout.same_component(a, b)
    }

    /// `x ◁ y`
    #[inline]
    pub fn tri(&self, x: usize, y: usize) -> usize {
        self.triangle[x * self.order() + y]
    }

    /// Product of two elements of one component.
    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        let c = self.layout.component_of(a);
        debug_assert_eq!(c, self.layout.component_of(b), "product across components");
        let off = self.layout.offset(c);
        off + self.components[c].mul(a - off, b - off)
    }

    /// Inverse of `x` in its own component `G_x`.
    #[inline]
    pub fn inv(&self, x: usize) -> usize {
        self.inverse[x]
    }

    /// The identity `e_x` of the component containing `x`.
    #[inline]
    pub fn identity_of(&self, x: usize) -> usize {
        self.identity_of[x]
    }

    pub fn component_identity(&self, c: usize) -> usize {
        self.layout.offset(c) + self.components[c].identity()
    }

    pub fn triangle_table(&self) -> Vec<Vec<usize>> {
        unflatten(&self.triangle, self.order())
    }

    pub fn to_raw(&self) -> RawMcq {
        RawMcq {
            components: self.components.iter().map(FiniteGroup::to_raw).collect(),
            triangle: self.triangle_table(),
        }
    }

    /// The underlying quandle `(X, ◁)`.
    pub fn as_quandle(&self) -> FiniteQuandle {
        FiniteQuandle::from_flat_unchecked(self.order(), self.triangle.clone())
    }

    /// Component sizes in ascending order.
    pub fn size_multiset(&self) -> Vec<usize> {
        let mut s = self.layout.sizes().to_vec();
        s.sort_unstable();
        s
    }
}

/// `G` as a one-component MCQ with `a ◁ b = b⁻¹ab`.
pub fn mcq_from_group(g: &FiniteGroup) -> FiniteMCQ {
    let n = g.order();
    let triangle = (0..n).flat_map(|a| (0..n).map(move |b| g.conjugate(a, b))).collect();
    FiniteMCQ::assemble(vec![g.clone()], ComponentLayout::from_sizes(vec![n]), triangle)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_algebra::{cyclic_group, symmetric_group};
    use crate::Error;

    fn z2_raw(triangle: Vec<Vec<usize>>) -> RawMcq {
        RawMcq {
            components: vec![cyclic_group(2).unwrap().to_raw()],
            triangle,
        }
    }

    #[test]
    fn conjugation_mcq_of_z2() {
        let raw = z2_raw(vec![vec![0, 0], vec![1, 1]]);
        assert_eq!(verify_mcq(&raw).unwrap(), Verdict::Pass);
        let x = FiniteMCQ::from_raw(&raw).unwrap();
        assert_eq!(x, mcq_from_group(&cyclic_group(2).unwrap()));
    }

    #[test]
    fn m1_failure() {
        let raw = z2_raw(vec![vec![0, 1], vec![1, 1]]);
        assert_eq!(
            verify_mcq(&raw).unwrap(),
            Verdict::Fail(Violation::new("M1", vec![0, 1]))
        );
        assert!(matches!(FiniteMCQ::from_raw(&raw), Err(Error::Axiom(_))));
    }

    #[test]
    fn group_failure_is_scoped_to_component() {
        let raw = RawMcq {
            components: vec![
                cyclic_group(1).unwrap().to_raw(),
                RawGroup {
                    table: vec![vec![0, 1], vec![0, 0]],
                    identity: 0,
                },
            ],
            triangle: vec![vec![0, 0, 0], vec![1, 1, 1], vec![2, 2, 2]],
        };
        let v = verify_mcq(&raw).unwrap();
        assert_eq!(v.violation().unwrap().condition, "G1:identity");
    }

    #[test]
    fn malformed_inputs() {
        let raw = z2_raw(vec![vec![0, 0], vec![1]]);
        assert!(matches!(verify_mcq(&raw), Err(Error::Malformed(_))));
        let raw = z2_raw(vec![vec![0, 0], vec![1, 2]]);
        assert!(matches!(verify_mcq(&raw), Err(Error::Malformed(_))));
        let raw = RawMcq {
            components: vec![],
            triangle: vec![],
        };
        assert!(matches!(verify_mcq(&raw), Err(Error::Malformed(_))));
    }

    #[test]
    fn mcq_from_group_examples() {
        let z2 = mcq_from_group(&cyclic_group(2).unwrap());
        assert_eq!(z2.order(), 2);
        assert!(z2.as_quandle().is_trivial());
        let one = mcq_from_group(&cyclic_group(1).unwrap());
        assert_eq!(one.order(), 1);
        let s3 = mcq_from_group(&symmetric_group(3).unwrap());
        assert_eq!(s3.order(), 6);
        assert_eq!(s3.num_components(), 1);
        assert_eq!(verify_mcq(&s3.to_raw()).unwrap(), Verdict::Pass);
    }

    #[test]
    fn disjoint_union_of_abelian_groups_with_trivial_triangle() {
        // x ◁ y = x on Z_2 ⊔ Z_3 is an MCQ: every axiom reduces to identities.
        let raw = RawMcq {
            components: vec![cyclic_group(2).unwrap().to_raw(), cyclic_group(3).unwrap().to_raw()],
            triangle: (0..5).map(|x| vec![x; 5]).collect(),
        };
        assert_eq!(verify_mcq(&raw).unwrap(), Verdict::Pass);
    }

    #[test]
    fn m4_component_failure_is_detected() {
        // Two copies of Z_2 with x ◁ y swapping only the non-identity
        // elements across components breaks the component structure.
        let mut triangle: Vec<Vec<usize>> = (0..4).map(|x| vec![x; 4]).collect();
        for y in 0..4 {
            triangle[1][y] = 3;
            triangle[3][y] = 1;
        }
        for (x, row) in triangle.iter_mut().enumerate() {
            row[x] = x;
        }
        let raw = RawMcq {
            components: vec![cyclic_group(2).unwrap().to_raw(); 2],
            triangle,
        };
        let v = verify_mcq(&raw).unwrap();
        assert!(!v.is_pass());
    }
}
