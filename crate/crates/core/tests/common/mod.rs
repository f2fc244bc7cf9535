//! Direct transcriptions of the condition systems over `Z_n`, used as
//! oracles. Nothing here goes through the library's condition tables.

#![allow(dead_code)]

use mcq_core::finite_algebra::{cyclic_group, FiniteGroup, RawGroup};
use mcq_core::mcq::{mcq_from_group, FiniteMCQ, RawMcq};

/// `Z_n` arithmetic.
#[derive(Clone, Copy)]
pub struct Zn(pub usize);

impl Zn {
    pub fn add(self, a: usize, b: usize) -> usize {
        (a + b) % self.0
    }
    pub fn mul(self, a: usize, b: usize) -> usize {
        a * b % self.0
    }
    pub fn neg(self, a: usize) -> usize {
        (self.0 - a % self.0) % self.0
    }
    pub fn unit(self, a: usize) -> bool {
        (0..self.0).any(|b| self.mul(a, b) == 1 % self.0)
    }
}

pub type F<'a> = &'a dyn Fn(usize, usize) -> usize;

pub fn z2_mcq() -> FiniteMCQ {
    mcq_from_group(&cyclic_group(2).unwrap())
}

/// Two trivial groups with `x ◁ y = x`.
pub fn two_points() -> FiniteMCQ {
    let t = FiniteGroup::trivial();
    FiniteMCQ::from_raw(&RawMcq {
        components: vec![t.to_raw(), t.to_raw()],
        triangle: vec![vec![0, 0], vec![1, 1]],
    })
    .unwrap()
}

pub fn one_point() -> FiniteMCQ {
    mcq_from_group(&cyclic_group(1).unwrap())
}

/// Decodes `code` into `len` digits base `n`, most significant first.
pub fn digits(mut code: usize, n: usize, len: usize) -> Vec<usize> {
    let mut d = vec![0; len];
    for slot in d.iter_mut().rev() {
        *slot = code % n;
        code /= n;
    }
    d
}

pub fn comp_pairs(x: &FiniteMCQ) -> Vec<(usize, usize)> {
    let n = x.order();
    (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .filter(|&(a, b)| x.same_component(a, b))
        .collect()
}

/// A table on `X × X` from row-major values.
pub fn full<'a>(x: &FiniteMCQ, v: &'a [usize]) -> impl Fn(usize, usize) -> usize + 'a {
    let n = x.order();
    move |a, b| v[a * n + b]
}

/// A table on component pairs from values in block order.
pub fn blocks<'a>(x: &FiniteMCQ, v: &'a [usize]) -> impl Fn(usize, usize) -> usize + 'a {
    let l = x.layout().clone();
    move |a, b| v[l.block_index(a, b)]
}

/// The nine pair conditions.
pub fn pair_ok(x: &FiniteMCQ, r: Zn, f1: F, f2: F) -> bool {
    let n = x.order();
    let cp = comp_pairs(x);
    let (t, m, i, e) = (|a, b| x.tri(a, b), |a, b| x.mul(a, b), |a| x.inv(a), |a| x.identity_of(a));
    for &(a, b) in &cp {
        if r.add(f1(a, b), f2(a, b)) != f1(a, m(i(a), b)) {
            return false;
        }
        for y in 0..n {
            if f1(a, y) != f1(b, y) {
                return false;
            }
            if f2(m(a, b), y) != r.add(f2(a, y), r.mul(f1(t(b, y), t(i(a), y)), f2(b, y))) {
                return false;
            }
            if f1(y, e(a)) != 1 % r.0 {
                return false;
            }
            if f1(y, m(a, b)) != r.mul(f1(t(y, a), b), f1(y, a)) {
                return false;
            }
            if f2(y, m(a, b)) != r.mul(f1(t(y, a), b), f2(y, a)) {
                return false;
            }
        }
    }
    for p in 0..n {
        for q in 0..n {
            for z in 0..n {
                let (pq, pz, qz) = (t(p, q), t(p, z), t(q, z));
                if r.mul(f1(pq, z), f1(p, q)) != r.mul(f1(pz, qz), f1(p, z)) {
                    return false;
                }
                if r.mul(f1(pq, z), f2(p, q)) != r.mul(f2(pz, qz), f1(q, z)) {
                    return false;
                }
                if f2(pq, z) != r.add(r.mul(f1(pz, qz), f2(p, z)), r.mul(f2(pz, qz), f2(q, z))) {
                    return false;
                }
            }
        }
    }
    true
}

/// The five cocycle conditions with `M = R = Z_n`.
pub fn cocycle_ok(x: &FiniteMCQ, r: Zn, f1: F, f2: F, p1: F, p2: F) -> bool {
    let n = x.order();
    let (t, m, i) = (|a, b| x.tri(a, b), |a, b| x.mul(a, b), |a| x.inv(a));
    let cp = comp_pairs(x);
    for &(a, b) in &cp {
        for &(b2, c) in &cp {
            if b2 != b {
                continue;
            }
            let lhs = r.add(p2(a, b), p2(m(a, b), c));
            let rhs = r.add(r.mul(f1(a, i(a)), p2(b, c)), p2(a, m(b, c)));
            if lhs != rhs {
                return false;
            }
        }
        let conj = m(m(i(b), a), b);
        if r.add(r.mul(f1(b, i(b)), p1(a, b)), p2(b, conj)) != p2(a, b) {
            return false;
        }
        for y in 0..n {
            let lhs = r.add(r.mul(f2(y, m(a, b)), p2(a, b)), p1(y, m(a, b)));
            let rhs = r.add(r.mul(f1(t(y, a), b), p1(y, a)), p1(t(y, a), b));
            if lhs != rhs {
                return false;
            }
            let lhs = r.add(r.mul(f1(m(a, b), y), p2(a, b)), p1(m(a, b), y));
            let rhs = r.add(
                r.add(p1(a, y), r.mul(f1(t(a, y), t(i(a), y)), p1(b, y))),
                p2(t(a, y), t(b, y)),
            );
            if lhs != rhs {
                return false;
            }
        }
    }
    for p in 0..n {
        for q in 0..n {
            for z in 0..n {
                let (pq, pz, qz) = (t(p, q), t(p, z), t(q, z));
                let lhs = r.add(r.mul(f1(pq, z), p1(p, q)), p1(pq, z));
                let rhs = r.add(
                    r.add(r.mul(f1(pz, qz), p1(p, z)), r.mul(f2(pz, qz), p1(q, z))),
                    p1(pz, qz),
                );
                if lhs != rhs {
                    return false;
                }
            }
        }
    }
    true
}

/// Every tuple condition with `M = R = Z_n`; `skip_1ii` leaves out `(1-ii)`.
pub fn tuple_ok(x: &FiniteMCQ, r: Zn, f: [F; 6], skip_1ii: bool) -> bool {
    let [f1, f2, f3, f4, p1, p2] = f;
    let n = x.order();
    let (t, m, i, e) = (|a, b| x.tri(a, b), |a, b| x.mul(a, b), |a| x.inv(a), |a| x.identity_of(a));
    let cp = comp_pairs(x);
    for &(a, b) in &cp {
        if !r.unit(f3(a, b)) || !r.unit(f4(a, b)) {
            return false;
        }
    }
    for &(a, b) in &cp {
        for &(b2, c) in &cp {
            if b2 != b {
                continue;
            }
            let (ab, bc) = (m(a, b), m(b, c));
            if r.mul(f3(ab, c), f3(a, b)) != f3(a, bc)
                || r.mul(f3(ab, c), f4(a, b)) != r.mul(f4(a, bc), f3(b, c))
                || f4(ab, c) != r.mul(f4(a, bc), f4(b, c))
                || r.add(r.mul(f3(ab, c), p2(a, b)), p2(ab, c)) != r.add(r.mul(f4(a, bc), p2(b, c)), p2(a, bc))
            {
                return false;
            }
        }
    }
    for &(a, b) in &cp {
        let (ab, c) = (m(a, b), m(m(i(b), a), b));
        if f1(a, b) != r.mul(f4(i(b), ab), f3(a, b)) {
            return false;
        }
        if !skip_1ii && r.add(f3(b, c), r.mul(f4(b, c), f2(a, b))) != f4(a, b) {
            return false;
        }
        if r.add(r.mul(f4(b, c), p1(a, b)), p2(b, c)) != p2(a, b) {
            return false;
        }
    }
    for y in 0..n {
        for &(a, b) in &cp {
            let (ab, ea) = (m(a, b), e(a));
            if f1(y, ea) != 1 % r.0
                || f1(y, ab) != r.mul(f1(t(y, a), b), f1(y, a))
                || r.mul(f2(y, ab), f3(a, b)) != r.mul(f1(t(y, a), b), f2(y, a))
                || r.mul(f2(y, ab), f4(a, b)) != f2(t(y, a), b)
                || r.mul(f2(y, ea), p2(ea, ea)) != p1(y, ea)
                || r.add(r.mul(f2(y, ab), p2(a, b)), p1(y, ab))
                    != r.add(r.mul(f1(t(y, a), b), p1(y, a)), p1(t(y, a), b))
            {
                return false;
            }
        }
    }
    for p in 0..n {
        for q in 0..n {
            for z in 0..n {
                let (pq, pz, qz) = (t(p, q), t(p, z), t(q, z));
                if r.mul(f1(pq, z), f1(p, q)) != r.mul(f1(pz, qz), f1(p, z))
                    || r.mul(f1(pq, z), f2(p, q)) != r.mul(f2(pz, qz), f1(q, z))
                    || f2(pq, z) != r.add(r.mul(f1(pz, qz), f2(p, z)), r.mul(f2(pz, qz), f2(q, z)))
                    || r.add(r.mul(f1(pq, z), p1(p, q)), p1(pq, z))
                        != r.add(
                            r.add(r.mul(f1(pz, qz), p1(p, z)), r.mul(f2(pz, qz), p1(q, z))),
                            p1(pz, qz),
                        )
                {
                    return false;
                }
            }
        }
    }
    for &(a, b) in &cp {
        for y in 0..n {
            let (ab, ay, by) = (m(a, b), t(a, y), t(b, y));
            if r.mul(f1(ab, y), f3(a, b)) != r.mul(f3(ay, by), f1(a, y))
                || r.mul(f1(ab, y), f4(a, b)) != r.mul(f4(ay, by), f1(b, y))
                || f2(ab, y) != r.add(r.mul(f3(ay, by), f2(a, y)), r.mul(f4(ay, by), f2(b, y)))
                || r.add(r.mul(f1(ab, y), p2(a, b)), p1(ab, y))
                    != r.add(r.add(r.mul(f3(ay, by), p1(a, y)), r.mul(f4(ay, by), p1(b, y))), p2(ay, by))
            {
                return false;
            }
        }
    }
    true
}

/// The alternative to `(1-ii)`.
pub fn alt_1ii_ok(x: &FiniteMCQ, r: Zn, f2: F, f3: F, f4: F) -> bool {
    comp_pairs(x).into_iter().all(|(a, b)| {
        let (bi, ab, e) = (x.inv(b), x.mul(a, b), x.identity_of(b));
        let first = r.mul(r.mul(f3(bi, ab), f4(bi, e)), f3(b, bi));
        f2(a, b) == r.add(r.neg(first), r.mul(f4(bi, ab), f4(a, b)))
    })
}

/// Smallest `k > 0` with `S_b^k = id` for every `b`, by direct iteration.
pub fn brute_type(table: &[Vec<usize>]) -> usize {
    let n = table.len();
    (1..)
        .find(|&k| {
            (0..n).all(|a| {
                (0..n).all(|b| {
                    let mut x = a;
                    for _ in 0..k {
                        x = table[x][b];
                    }
                    x == a
                })
            })
        })
        .unwrap()
}

/// Conjugation MCQ of a group, built from raw tables.
pub fn raw_conj(g: &FiniteGroup) -> RawMcq {
    let n = g.order();
    RawMcq {
        components: vec![RawGroup {
            table: g.table(),
            identity: g.identity(),
        }],
        triangle: (0..n).map(|a| (0..n).map(|b| g.mul(g.mul(g.inv(b), a), b)).collect()).collect(),
    }
}

use std::sync::Arc;

use mcq_core::affine_extension::{enumerate_six_tuples, EquivalenceWitness, SixTuple};
use mcq_core::finite_algebra::{module_power, ring_zn, symmetric_group};
use mcq_core::mcq::{associated_mcq, z_family_from_quandle};
use mcq_core::quandle::dihedral_quandle;
use mcq_core::setting::Setting;

/// MCQs of order at most 6 used by the randomized harnesses.
pub fn small_mcqs() -> Vec<(&'static str, FiniteMCQ)> {
    vec![
        ("one-point", one_point()),
        ("conj-Z2", z2_mcq()),
        ("two-points", two_points()),
        ("conj-Z3", mcq_from_group(&cyclic_group(3).unwrap())),
        ("conj-S3", mcq_from_group(&symmetric_group(3).unwrap())),
        ("Z2-family-R3", associated_mcq(&z_family_from_quandle(&dihedral_quandle(3).unwrap())).unwrap()),
    ]
}

/// `(R, M)` choices: `M = R` for `Z_2, Z_3, Z_5`, and `M = Z_2²`.
pub fn settings_for(x: &FiniteMCQ) -> Vec<Arc<Setting>> {
    let mut out: Vec<Arc<Setting>> = [2, 3, 5].iter().map(|&r| Setting::regular(x.clone(), ring_zn(r).unwrap())).collect();
    let z2 = ring_zn(2).unwrap();
    out.push(Setting::new(x.clone(), z2.clone(), module_power(&z2, 2).unwrap()).unwrap());
    out
}

/// Verified starting tuples: every tuple when the search is small,
/// otherwise the trivial one.
pub fn base_tuples(s: &Arc<Setting>) -> Vec<SixTuple> {
    if s.mcq().order() <= 2 {
        if let Ok(all) = enumerate_six_tuples(s, 1 << 22) {
            return all;
        }
    }
    vec![SixTuple::trivial(s.clone())]
}

pub fn witness(s: &Setting, seed: u64) -> EquivalenceWitness {
    EquivalenceWitness::seeded(s, seed)
}
