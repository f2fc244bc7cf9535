use super::FiniteMCQ;
use crate::error::{flatten_table, malformed, unflatten, Error, Result, Verdict, Violation};
use crate::finite_algebra::{cyclic_group, Codomain, FiniteGroup, FiniteRing, MapTable};
use crate::quandle::FiniteQuandle;

/// A `G`-family of quandles: one operation `◁^g` on `X` per `g ∈ G`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GFamily {
    group: FiniteGroup,
    carrier_size: usize,
    ops: Vec<Vec<usize>>,
}

fn family_axioms(group: &FiniteGroup, n: usize, ops: &[Vec<usize>]) -> Verdict {
    let op = |g: usize, x: usize, y: usize| ops[g][x * n + y];
    let fail = |name: &str, w: Vec<usize>| Verdict::Fail(Violation::new(name, w));
    let m = group.order();
    for g in 0..m {
        for x in 0..n {
            if op(g, x, x) != x {
                return fail("F-idempotent", vec![g, x]);
            }
        }
    }
    let e = group.identity();
    for x in 0..n {
        for y in 0..n {
            if op(e, x, y) != x {
                return fail("F-identity", vec![x, y]);
            }
        }
    }
    for g in 0..m {
        for h in 0..m {
            let gh = group.mul(g, h);
            for x in 0..n {
                for y in 0..n {
                    if op(gh, x, y) != op(h, op(g, x, y), y) {
                        return fail("F-product", vec![g, h, x, y]);
                    }
                }
            }
        }
    }
    for g in 0..m {
        for h in 0..m {
            let conj = group.conjugate(g, h);
            for x in 0..n {
                for y in 0..n {
                    let xy = op(g, x, y);
                    for z in 0..n {
                        if op(h, xy, z) != op(conj, op(h, x, z), op(h, y, z)) {
                            return fail("F-distributive", vec![g, h, x, y, z]);
                        }
                    }
                }
            }
        }
    }
    Verdict::Pass
}

/// Checks the three `G`-family axioms; `ops[g]` is the table of `◁^g`.
pub fn verify_g_family(
    group: &FiniteGroup,
    carrier_size: usize,
    ops: &[Vec<Vec<usize>>],
) -> Result<Verdict> {
    let flat = parse_ops(group, carrier_size, ops)?;
    Ok(family_axioms(group, carrier_size, &flat))
}

fn parse_ops(group: &FiniteGroup, n: usize, ops: &[Vec<Vec<usize>>]) -> Result<Vec<Vec<usize>>> {
    if n == 0 {
        return Err(malformed("a G-family needs a non-empty carrier"));
    }
    if ops.len() != group.order() {
        return Err(malformed(format!(
            "expected one operation per group element ({}), found {}",
            group.order(),
            ops.len()
        )));
    }
    ops.iter()
        .enumerate()
        .map(|(g, t)| flatten_table(&format!("operation {g}"), t, n, n, n))
        .collect()
}

impl GFamily {
    pub fn new(group: FiniteGroup, carrier_size: usize, ops: &[Vec<Vec<usize>>]) -> Result<Self> {
        let flat = parse_ops(&group, carrier_size, ops)?;
        family_axioms(&group, carrier_size, &flat).into_result()?;
        Ok(Self {
            group,
            carrier_size,
            ops: flat,
        })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn carrier_size(&self) -> usize {
        self.carrier_size
    }

    /// `x ◁^g y`
    #[inline]
    pub fn op(&self, g: usize, x: usize, y: usize) -> usize {
        self.ops[g][x * self.carrier_size + y]
    }

    pub fn op_tables(&self) -> Vec<Vec<Vec<usize>>> {
        self.ops.iter().map(|t| unflatten(t, self.carrier_size)).collect()
    }
}

/// The `G`-family of Alexander quandles on the group ring `R[G]`, viewed as
/// a right module over itself: `x ◁^g y = xg + y(e − g)`.
///
/// An element of `R[G]` is its coefficient vector in the order of `G`'s
/// indices, encoded with the coefficient of group element `0` as the most
/// significant base-`|R|` digit. Fails with a resource limit when
/// `|R|^|G|` exceeds `budget`.
pub fn g_family_alexander(ring: &FiniteRing, group: &FiniteGroup, budget: usize) -> Result<GFamily> {
    let (r, m) = (ring.order(), group.order());
    let n = (0..m)
        .try_fold(1usize, |acc, _| acc.checked_mul(r))
        .filter(|&n| n <= budget)
        .ok_or_else(|| Error::ResourceLimit {
            what: format!("group ring R[G] with |R| = {r}, |G| = {m}"),
            budget: budget as u64,
        })?;
    let decode = |mut x: usize| {
        let mut c = vec![0; m];
        for slot in c.iter_mut().rev() {
            *slot = x % r;
            x /= r;
        }
        c
    };
    let encode = |c: &[usize]| c.iter().fold(0, |acc, &d| acc * r + d);
    let coeffs: Vec<Vec<usize>> = (0..n).map(decode).collect();
    // (x·g) has coefficient x_h at h·g.
    let right_mul = |x: &[usize], g: usize| {
        let mut out = vec![ring.zero(); m];
        for (h, &c) in x.iter().enumerate() {
            out[group.mul(h, g)] = c;
        }
        out
    };
    let mut ops = Vec::with_capacity(m);
    for g in 0..m {
        let shifted: Vec<Vec<usize>> = coeffs.iter().map(|x| right_mul(x, g)).collect();
        let mut table = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let v: Vec<usize> = (0..m)
                    .map(|k| ring.add(shifted[x][k], ring.sub(coeffs[y][k], shifted[y][k])))
                    .collect();
                table.push(encode(&v));
            }
        }
        ops.push(table);
    }
    let verdict = family_axioms(group, n, &ops);
    if let Verdict::Fail(v) = verdict {
        return Err(Error::Inconsistency(format!("group-ring family fails {v}")));
    }
    Ok(GFamily {
        group: group.clone(),
        carrier_size: n,
        ops,
    })
}

/// The `Z_type`-family `(Q, {◁^i})` where `◁^i` is the `i`-fold iterate.
pub fn z_family_from_quandle(q: &FiniteQuandle) -> GFamily {
    let t = q.quandle_type();
    let n = q.order();
    let ops = (0..t)
        .map(|i| {
            (0..n)
                .flat_map(|x| (0..n).map(move |y| (x, y)))
                .map(|(x, y)| q.op_power(x, y, i))
                .collect()
        })
        .collect();
    GFamily {
        group: cyclic_group(t).expect("quandle type is positive"),
        carrier_size: n,
        ops,
    }
}

/// The associated MCQ on `G × X` with `(g, x) ◁ (h, y) = (h⁻¹gh, x ◁^h y)`
/// and `(g, x)(h, x) = (gh, x)`.
///
/// `(g, x)` has global index `x·|G| + g`, so component `x` is `G × {x}`.
pub fn associated_mcq(f: &GFamily) -> Result<FiniteMCQ> {
    let m = f.group.order();
    let n = f.carrier_size * m;
    let mut triangle = Vec::with_capacity(n * n);
    for p in 0..n {
        let (x, g) = (p / m, p % m);
        for q in 0..n {
            let (y, h) = (q / m, q % m);
            triangle.push(f.op(h, x, y) * m + f.group.conjugate(g, h));
        }
    }
    FiniteMCQ::from_groups(vec![f.group.clone(); f.carrier_size], triangle)
}

/// The projection `G × X → G`, `(g, x) ↦ g`.
pub fn associated_projection(f: &GFamily) -> MapTable {
    let m = f.group.order();
    MapTable::from_points(f.carrier_size * m, Codomain::Carrier(m), |p| p % m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_algebra::{ring_zn, symmetric_group};
    use crate::mcq::{check_mcq_hom, mcq_from_group, verify_mcq};
    use crate::quandle::{alexander_quandle_zn, dihedral_quandle};

    fn z2_family_on_r3() -> GFamily {
        z_family_from_quandle(&dihedral_quandle(3).unwrap())
    }

    #[test]
    fn z2_family_on_r3_verifies() {
        let f = z2_family_on_r3();
        assert_eq!(f.group().order(), 2);
        let r3 = dihedral_quandle(3).unwrap();
        assert_eq!(f.op_tables()[1], r3.table());
        assert_eq!(f.op_tables()[0], FiniteQuandle::trivial(3).unwrap().table());
        assert_eq!(
            verify_g_family(f.group(), 3, &f.op_tables()).unwrap(),
            Verdict::Pass
        );
    }

    #[test]
    fn identity_axiom_failure() {
        let r3 = dihedral_quandle(3).unwrap();
        let ops = vec![r3.table(), r3.table()];
        let v = verify_g_family(&cyclic_group(2).unwrap(), 3, &ops).unwrap();
        assert_eq!(v.violation().unwrap().condition, "F-identity");
        assert!(verify_g_family(&cyclic_group(2).unwrap(), 3, &ops[..1]).is_err());
    }

    #[test]
    fn alexander_family_over_z2() {
        let r = ring_zn(2).unwrap();
        let g = cyclic_group(2).unwrap();
        let f = g_family_alexander(&r, &g, 1 << 10).unwrap();
        assert_eq!(f.carrier_size(), 4);
        for x in 0..4 {
            for y in 0..4 {
                assert_eq!(f.op(0, x, y), x);
            }
            for h in 0..2 {
                assert_eq!(f.op(h, x, x), x);
            }
        }
        assert_eq!(verify_g_family(&g, 4, &f.op_tables()).unwrap(), Verdict::Pass);
        assert!(matches!(
            g_family_alexander(&r, &g, 3),
            Err(Error::ResourceLimit { .. })
        ));
    }

    #[test]
    fn alexander_family_over_trivial_group_is_trivial() {
        let f = g_family_alexander(&ring_zn(3).unwrap(), &cyclic_group(1).unwrap(), 100).unwrap();
        assert_eq!(f.carrier_size(), 3);
        assert!((0..3).all(|x| (0..3).all(|y| f.op(0, x, y) == x)));
    }

    #[test]
    fn alexander_family_over_s3_verifies() {
        let f = g_family_alexander(&ring_zn(2).unwrap(), &symmetric_group(3).unwrap(), 64).unwrap();
        assert_eq!(f.carrier_size(), 64);
    }

    #[test]
    fn z_family_of_alexander_quandle() {
        let q = alexander_quandle_zn(5, 2).unwrap();
        let f = z_family_from_quandle(&q);
        assert_eq!(f.group().order(), 4);
        // ◁^2 on Z_5 with t = 2 is a ◁ b ↦ 4a + (1 − 4)b = 4a + 2b.
        for a in 0..5 {
            for b in 0..5 {
                assert_eq!(f.op(2, a, b), (4 * a + 2 * b) % 5);
            }
        }
        assert_eq!(verify_g_family(f.group(), 5, &f.op_tables()).unwrap(), Verdict::Pass);
        let triv = z_family_from_quandle(&FiniteQuandle::trivial(4).unwrap());
        assert_eq!(triv.group().order(), 1);
    }

    #[test]
    fn associated_mcqs_verify() {
        let families = [
            z2_family_on_r3(),
            z_family_from_quandle(&alexander_quandle_zn(5, 2).unwrap()),
            g_family_alexander(&ring_zn(2).unwrap(), &cyclic_group(2).unwrap(), 16).unwrap(),
            g_family_alexander(&ring_zn(3).unwrap(), &cyclic_group(1).unwrap(), 16).unwrap(),
        ];
        for f in &families {
            let x = associated_mcq(f).unwrap();
            assert_eq!(verify_mcq(&x.to_raw()).unwrap(), Verdict::Pass);
            assert_eq!(x.order(), f.group().order() * f.carrier_size());
            let g = mcq_from_group(f.group());
            let rep = check_mcq_hom(&associated_projection(f), &x, &g).unwrap();
            assert!(rep.is_hom());
            assert_eq!(rep.fiber_size, Some(f.carrier_size()));
        }
        let x = associated_mcq(&families[0]).unwrap();
        assert_eq!((x.order(), x.num_components()), (6, 3));
        let x = associated_mcq(&families[2]).unwrap();
        assert_eq!((x.order(), x.num_components()), (8, 4));
    }

    #[test]
    fn trivial_group_family_gives_trivial_triangle() {
        let f = g_family_alexander(&ring_zn(3).unwrap(), &cyclic_group(1).unwrap(), 16).unwrap();
        let x = associated_mcq(&f).unwrap();
        assert!((0..3).all(|p| (0..3).all(|q| x.tri(p, q) == p)));
    }
}
