mod common;

use common::*;
use mcq_core::alexander_pairs::*;
use mcq_core::conditions::Slot;
use mcq_core::finite_algebra::{cyclic_group, module_power, ring_zn};
use mcq_core::mcq::{check_mcq_hom, mcq_from_group, FiniteMCQ};
use mcq_core::setting::Setting;
use mcq_core::{Error, Verdict};

fn oracle_pairs(x: &FiniteMCQ, r: usize) -> Vec<Vec<usize>> {
    let n2 = x.order() * x.order();
    let total = r.pow(2 * n2 as u32);
    (0..total)
        .map(|c| digits(c, r, 2 * n2))
        .filter(|d| pair_ok(x, Zn(r), &full(x, &d[..n2]), &full(x, &d[n2..])))
        .collect()
}

fn flat_pairs(ps: &[AlexanderPair]) -> Vec<Vec<usize>> {
    ps.iter()
        .map(|p| [p.f1().values(), p.f2().values()].concat())
        .collect()
}

fn check_enumeration(x: FiniteMCQ, r: usize) -> usize {
    let ring = ring_zn(r).unwrap();
    let got = enumerate_pairs(&x, &ring, u64::MAX).unwrap();
    let want = oracle_pairs(&x, r);
    assert_eq!(flat_pairs(&got), want);
    for p in &got {
        assert_eq!(verify_pair_properties(p).unwrap(), Verdict::Pass);
    }
    got.len()
}

#[test]
fn pairs_on_z2_over_z2_match_oracle() {
    // the only unit of Z_2 is 1, and then f2 = 0
    assert_eq!(check_enumeration(z2_mcq(), 2), 1);
}

#[test]
fn pairs_on_z2_over_z3_match_oracle() {
    assert!(check_enumeration(z2_mcq(), 3) > 1);
}

#[test]
fn pairs_on_two_trivial_components_match_oracle() {
    check_enumeration(two_points(), 2);
    check_enumeration(two_points(), 3);
}

#[test]
fn one_point_over_z3_has_only_the_trivial_pair() {
    let s = Setting::regular(one_point(), ring_zn(3).unwrap());
    let ps = enumerate_pairs(s.mcq(), s.ring(), 1 << 20).unwrap();
    assert_eq!(ps, vec![AlexanderPair::trivial(s)]);
    assert_eq!(verify_pair_properties(&ps[0]).unwrap(), Verdict::Pass);
}

#[test]
fn pair_verdicts_match_oracle_on_every_candidate() {
    let x = z2_mcq();
    let s = Setting::regular(x.clone(), ring_zn(2).unwrap());
    for c in 0..256 {
        let d = digits(c, 2, 8);
        let p = AlexanderPair::new(
            s.clone(),
            s.map_from_rows(Slot::F1, &[d[0..2].to_vec(), d[2..4].to_vec()]).unwrap(),
            s.map_from_rows(Slot::F2, &[d[4..6].to_vec(), d[6..8].to_vec()]).unwrap(),
        )
        .unwrap();
        assert_eq!(verify_pair(&p).is_pass(), pair_ok(&x, Zn(2), &full(&x, &d[..4]), &full(&x, &d[4..])));
    }
}

fn oracle_cocycles(p: &AlexanderPair, r: usize) -> Vec<Vec<usize>> {
    let x = p.setting().mcq();
    let (n2, pc) = (x.order() * x.order(), x.layout().pair_count());
    let (f1v, f2v) = (p.f1().values().to_vec(), p.f2().values().to_vec());
    let (f1, f2) = (full(x, &f1v), full(x, &f2v));
    (0..r.pow((n2 + pc) as u32))
        .map(|c| digits(c, r, n2 + pc))
        .filter(|d| cocycle_ok(x, Zn(r), &f1, &f2, &full(x, &d[..n2]), &blocks(x, &d[n2..])))
        .collect()
}

#[test]
fn cocycles_match_oracle_for_every_pair() {
    for (x, r) in [(z2_mcq(), 2), (two_points(), 2), (z2_mcq(), 3)] {
        let ring = ring_zn(r).unwrap();
        for p in enumerate_pairs(&x, &ring, u64::MAX).unwrap() {
            let got = enumerate_cocycles(&p, 1 << 24).unwrap();
            let flat: Vec<Vec<usize>> = got
                .iter()
                .map(|c| [c.phi1().values(), c.phi2().values()].concat())
                .collect();
            assert_eq!(flat, oracle_cocycles(&p, r));
            for c in &got {
                assert_eq!(verify_cocycle(c).unwrap(), Verdict::Pass);
                let ext = build_extension_augmented(c).unwrap();
                let hom = check_mcq_hom(&ext.projection, &ext.mcq, &x).unwrap();
                assert!(hom.is_extension());
                assert_eq!(hom.fiber_size, Some(r));
            }
        }
    }
}

#[test]
fn flipped_diagonal_phi1_is_rejected_by_a_listed_condition() {
    let s = Setting::regular(z2_mcq(), ring_zn(2).unwrap());
    let base = AugmentedPair::trivial(s.clone());
    for x in 0..2 {
        let mut phi1 = base.phi1().clone();
        phi1.set_value(x * 2 + x, 1).unwrap();
        let c = AugmentedPair::new(s.clone(), base.f1().clone(), base.f2().clone(), phi1, base.phi2().clone()).unwrap();
        let v = verify_cocycle(&c).unwrap();
        assert!(v.violation().unwrap().condition.starts_with('C'));
    }
}

#[test]
fn constant_phi2_verdict_matches_oracle() {
    let x = z2_mcq();
    let s = Setting::regular(x.clone(), ring_zn(3).unwrap());
    let base = AugmentedPair::trivial(s.clone());
    for c in 0..3 {
        let phi2 = s.constant(Slot::Phi2, c);
        let q = AugmentedPair::new(s.clone(), base.f1().clone(), base.f2().clone(), base.phi1().clone(), phi2).unwrap();
        let want = cocycle_ok(&x, Zn(3), &|_, _| 1, &|_, _| 0, &|_, _| 0, &|_, _| c);
        assert_eq!(pair_is_augmented_alexander(&q).is_pass(), want);
    }
}

#[test]
fn failing_pair_is_reported_before_cocycle() {
    let s = Setting::regular(z2_mcq(), ring_zn(2).unwrap());
    let f1 = s.constant(Slot::F1, 0);
    let c = AugmentedPair::new(s.clone(), f1, s.constant(Slot::F2, 0), s.constant(Slot::Phi1, 1), s.constant(Slot::Phi2, 1)).unwrap();
    assert!(pair_is_augmented_alexander(&c).violation().unwrap().condition.starts_with('A'));
    assert!(matches!(verify_cocycle(&c), Err(Error::Precondition(_))));
    assert!(matches!(build_extension_augmented(&c), Err(Error::Precondition(_))));
}

/// Every `(f1, f2, φ1, φ2)` over the conjugation MCQ of `Z_2` with
/// `R = M = Z_2`: the candidate is an MCQ exactly when the data is an
/// augmented pair.
#[test]
fn augmented_converse_exhaustive() {
    let x = z2_mcq();
    let s = Setting::regular(x.clone(), ring_zn(2).unwrap());
    let mut passing = 0;
    for c in 0..1usize << 16 {
        let d = digits(c, 2, 16);
        let m = |slot, v: &[usize]| s.map_from_rows(slot, &[v[0..2].to_vec(), v[2..4].to_vec()]).unwrap();
        let q = AugmentedPair::new(s.clone(), m(Slot::F1, &d[0..4]), m(Slot::F2, &d[4..8]), m(Slot::Phi1, &d[8..12]), m(Slot::Phi2, &d[12..16])).unwrap();
        let rep = check_converse_augmented(&q).unwrap();
        assert!(rep.agree(), "candidate {d:?}: {rep:?}");
        let oracle = pair_ok(&x, Zn(2), &full(&x, &d[0..4]), &full(&x, &d[4..8]))
            && cocycle_ok(&x, Zn(2), &full(&x, &d[0..4]), &full(&x, &d[4..8]), &full(&x, &d[8..12]), &blocks(&x, &d[12..16]));
        assert_eq!(rep.conditions.is_pass(), oracle);
        passing += usize::from(oracle);
    }
    assert!(passing > 0);
}

/// Every augmented candidate over two trivial components with
/// `R = M = Z_2`, which includes candidates whose first failing axiom is M3.
#[test]
fn augmented_converse_on_two_points() {
    let x = two_points();
    let s = Setting::regular(x.clone(), ring_zn(2).unwrap());
    let mut m3 = 0;
    for c in 0..1usize << 14 {
        let d = digits(c, 2, 14);
        let rows = |v: &[usize]| vec![v[0..2].to_vec(), v[2..4].to_vec()];
        let q = AugmentedPair::new(
            s.clone(),
            s.map_from_rows(Slot::F1, &rows(&d[0..4])).unwrap(),
            s.map_from_rows(Slot::F2, &rows(&d[4..8])).unwrap(),
            s.map_from_rows(Slot::Phi1, &rows(&d[8..12])).unwrap(),
            s.map_from_rows(Slot::Phi2, &[vec![d[12]], vec![d[13]]]).unwrap(),
        )
        .unwrap();
        let rep = check_converse_augmented(&q).unwrap();
        assert!(rep.agree(), "candidate {d:?}: {rep:?}");
        if rep.mcq.violation().is_some_and(|v| v.condition == "M3") {
            m3 += 1;
            assert!(!rep.conditions.is_pass());
        }
    }
    assert!(m3 > 0);
}

#[test]
fn inverse_forms_on_enumerated_cocycles() {
    // a = a⁻¹ throughout Z_2, so both forms agree there
    for (x, r) in [(z2_mcq(), 2), (z2_mcq(), 3), (two_points(), 3)] {
        for p in enumerate_pairs(&x, &ring_zn(r).unwrap(), u64::MAX).unwrap() {
            for c in enumerate_cocycles(&p, 1 << 24).unwrap() {
                let f = augmented_inverse_forms(&c).unwrap();
                assert!(f.with_phi2_inv_a && f.with_phi2_a_inv);
            }
        }
    }
    // with elements of order 3 and f1(a,a⁻¹) ≠ 1 the swapped form breaks
    let z3 = mcq_from_group(&cyclic_group(3).unwrap());
    let s = Setting::regular(z3, ring_zn(7).unwrap());
    let (mut total, mut swapped_fails) = (0, 0);
    for p in enumerate_pairs_pruned(s, 1 << 24).unwrap() {
        for c in enumerate_cocycles(&p, 1 << 26).unwrap() {
            let f = augmented_inverse_forms(&c).unwrap();
            assert!(f.with_phi2_inv_a);
            total += 1;
            swapped_fails += usize::from(!f.with_phi2_a_inv);
        }
    }
    assert_eq!(total, 343 + 49 + 49);
    assert!(swapped_fails > 0);
}

#[test]
fn nonregular_module_extensions_have_fibres_of_four() {
    let r = ring_zn(2).unwrap();
    let s = Setting::new(z2_mcq(), r.clone(), module_power(&r, 2).unwrap()).unwrap();
    for p in enumerate_pairs_pruned(s.clone(), 1 << 20).unwrap() {
        let cs = enumerate_cocycles(&p, 1 << 24).unwrap();
        assert!(!cs.is_empty());
        for c in cs.iter().take(16) {
            let ext = build_extension_augmented(c).unwrap();
            assert_eq!(ext.mcq.order(), 8);
            assert!(check_mcq_hom(&ext.projection, &ext.mcq, s.mcq()).unwrap().is_extension());
        }
    }
}

#[test]
fn unit_module_reproduces_the_base() {
    let r = ring_zn(2).unwrap();
    let s = Setting::regular(z2_mcq(), r.clone());
    let m1 = module_power(&ring_zn(2).unwrap(), 1).unwrap();
    assert_eq!(m1.order(), 2);
    let ext = build_extension_augmented(&AugmentedPair::trivial(s)).unwrap();
    assert_eq!(ext.fiber_size, 2);
}

#[test]
fn extension_collisions_are_reported() {
    let x = z2_mcq();
    let ring = ring_zn(2).unwrap();
    let mut all = Vec::new();
    for p in enumerate_pairs(&x, &ring, u64::MAX).unwrap() {
        all.extend(enumerate_cocycles(&p, 1 << 24).unwrap());
    }
    let groups = extension_collisions(&all).unwrap();
    for g in &groups {
        let first = build_extension_augmented(&all[g[0]]).unwrap();
        for &i in &g[1..] {
            assert_ne!(all[i], all[g[0]]);
            assert_eq!(build_extension_augmented(&all[i]).unwrap().mcq, first.mcq);
        }
    }
}

#[test]
fn budget_controls_enumeration() {
    let ring = ring_zn(2).unwrap();
    assert!(matches!(enumerate_pairs(&z2_mcq(), &ring, 255), Err(Error::ResourceLimit { .. })));
    let s = Setting::regular(z2_mcq(), ring);
    assert!(matches!(enumerate_pairs_pruned(s, 3), Err(Error::ResourceLimit { .. })));
}
