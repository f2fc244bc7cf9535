use super::FiniteMCQ;
use crate::error::{Result, Verdict, Violation};
use crate::finite_algebra::MapTable;
use crate::hom::{fiber_stats, map_values, HomReport};

pub(crate) fn hom_verdict(values: &[usize], x1: &FiniteMCQ, x2: &FiniteMCQ) -> Verdict {
    let n = x1.order();
    for x in 0..n {
        for y in 0..n {
            if values[x1.tri(x, y)] != x2.tri(values[x], values[y]) {
                return Verdict::Fail(Violation::new("hom-triangle", vec![x, y]));
            }
        }
    }
    let l = x1.layout();
    for c in 0..l.num_components() {
        let first = l.offset(c);
        for a in l.range(c) {
            if !x2.same_component(values[first], values[a]) {
                return Verdict::Fail(Violation::new("hom-component", vec![first, a]));
            }
        }
    }
    for c in 0..l.num_components() {
        for a in l.range(c) {
            for b in l.range(c) {
                if values[x1.mul(a, b)] != x2.mul(values[a], values[b]) {
                    return Verdict::Fail(Violation::new("hom-product", vec![a, b]));
                }
            }
        }
    }
    Verdict::Pass
}

/// Checks `f(x ◁ y) = f(x) ◁ f(y)` on all pairs, that each component lands
/// in a single component, and `f(ab) = f(a)f(b)` inside components.
pub fn check_mcq_hom(f: &MapTable, x1: &FiniteMCQ, x2: &FiniteMCQ) -> Result<HomReport> {
    let values = map_values(f, x1.order(), x2.order())?;
    let verdict = hom_verdict(values, x1, x2);
    let (injective, surjective, fiber_size) = fiber_stats(values, x2.order());
    Ok(HomReport {
        verdict,
        injective,
        surjective,
        fiber_size,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_algebra::{cyclic_group, symmetric_group, Codomain};
    use crate::mcq::{associated_mcq, mcq_from_group, z_family_from_quandle};
    use crate::quandle::dihedral_quandle;

    #[test]
    fn identity_is_isomorphism() {
        let x = associated_mcq(&z_family_from_quandle(&dihedral_quandle(3).unwrap())).unwrap();
        let id = MapTable::from_points(6, Codomain::Carrier(6), |p| p);
        assert!(check_mcq_hom(&id, &x, &x).unwrap().is_isomorphism());
    }

    #[test]
    fn constant_map_to_an_identity_is_a_hom() {
        // e ◁ e = e and e·e = e, so the constant map passes even into a
        // nontrivial component.
        let s3 = mcq_from_group(&symmetric_group(3).unwrap());
        let z2 = mcq_from_group(&cyclic_group(2).unwrap());
        let c = MapTable::from_points(2, Codomain::Carrier(6), |_| 0);
        let rep = check_mcq_hom(&c, &z2, &s3).unwrap();
        assert!(rep.is_hom());
        assert!(!rep.injective && !rep.surjective);
        let one = mcq_from_group(&cyclic_group(1).unwrap());
        let c = MapTable::from_points(6, Codomain::Carrier(1), |_| 0);
        assert_eq!(check_mcq_hom(&c, &s3, &one).unwrap().fiber_size, Some(6));
    }

    #[test]
    fn constant_non_identity_fails_product() {
        let z3 = mcq_from_group(&cyclic_group(3).unwrap());
        let c = MapTable::from_points(3, Codomain::Carrier(3), |_| 1);
        let rep = check_mcq_hom(&c, &z3, &z3).unwrap();
        assert_eq!(rep.verdict, Verdict::Fail(Violation::new("hom-product", vec![0, 0])));
    }

    #[test]
    fn splitting_a_component_fails() {
        // Z_2 into the trivial-triangle union Z_1 ⊔ Z_1.
        let two_points = super::super::FiniteMCQ::from_groups(
            vec![cyclic_group(1).unwrap(), cyclic_group(1).unwrap()],
            vec![0, 0, 1, 1],
        )
        .unwrap();
        let z2 = mcq_from_group(&cyclic_group(2).unwrap());
        let f = MapTable::from_points(2, Codomain::Carrier(2), |p| p);
        let rep = check_mcq_hom(&f, &z2, &two_points).unwrap();
        assert_eq!(rep.verdict, Verdict::Fail(Violation::new("hom-component", vec![0, 1])));
    }

    #[test]
    fn wrong_shape_is_malformed() {
        let z2 = mcq_from_group(&cyclic_group(2).unwrap());
        let f = MapTable::from_points(3, Codomain::Carrier(2), |_| 0);
        assert!(check_mcq_hom(&f, &z2, &z2).is_err());
    }
}
