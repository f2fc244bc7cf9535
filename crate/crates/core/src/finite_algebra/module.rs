use super::group::FiniteGroup;
use super::ring::FiniteRing;
use crate::error::{flatten_table, unflatten, Error, Result, Verdict, Violation};

/// Largest carrier materialised by [`module_power`].
pub const MAX_MODULE_ORDER: usize = 1 << 16;

/// A left module over a [`FiniteRing`]: an abelian group written additively
/// with an action table indexed `[ring element][module element]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LeftModule {
    carrier: FiniteGroup,
    ring_order: usize,
    action: Vec<usize>,
}

/// Checks the module laws for `action` over `ring` on an already verified
/// carrier group.
pub fn verify_module(
    ring: &FiniteRing,
    carrier: &FiniteGroup,
    action: &[Vec<usize>],
) -> Result<Verdict> {
    let n = carrier.order();
    let flat = flatten_table("module action", action, ring.order(), n, n)?;
    Ok(module_axioms(ring, carrier, &flat))
}

fn module_axioms(ring: &FiniteRing, carrier: &FiniteGroup, action: &[usize]) -> Verdict {
    let n = carrier.order();
    let act = |r: usize, u: usize| action[r * n + u];
    let fail = |name: &str, w: Vec<usize>| Verdict::Fail(Violation::new(name, w));
    for u in 0..n {
        for v in 0..n {
            if carrier.mul(u, v) != carrier.mul(v, u) {
                return fail("module-abelian", vec![u, v]);
            }
        }
    }
    for u in 0..n {
        if act(ring.one(), u) != u {
            return fail("action-unital", vec![u]);
        }
    }
    for r in 0..ring.order() {
        for u in 0..n {
            for v in 0..n {
                if act(r, carrier.mul(u, v)) != carrier.mul(act(r, u), act(r, v)) {
                    return fail("action-additive-module", vec![r, u, v]);
                }
            }
        }
    }
    for r in 0..ring.order() {
        for s in 0..ring.order() {
            for u in 0..n {
                if act(ring.add(r, s), u) != carrier.mul(act(r, u), act(s, u)) {
                    return fail("action-additive-ring", vec![r, s, u]);
                }
                if act(ring.mul(r, s), u) != act(r, act(s, u)) {
                    return fail("action-associative", vec![r, s, u]);
                }
            }
        }
    }
    Verdict::Pass
}

impl LeftModule {
    pub fn new(ring: &FiniteRing, carrier: FiniteGroup, action: &[Vec<usize>]) -> Result<Self> {
        verify_module(ring, &carrier, action)?.into_result()?;
        Ok(Self {
            ring_order: ring.order(),
            action: action.iter().flatten().copied().collect(),
            carrier,
        })
    }

    pub fn order(&self) -> usize {
        self.carrier.order()
    }

    pub fn ring_order(&self) -> usize {
        self.ring_order
    }

    pub fn carrier(&self) -> &FiniteGroup {
        &self.carrier
    }

    pub fn zero(&self) -> usize {
        self.carrier.identity()
    }

    #[inline]
    pub fn add(&self, u: usize, v: usize) -> usize {
        self.carrier.mul(u, v)
    }

    #[inline]
    pub fn neg(&self, u: usize) -> usize {
        self.carrier.inv(u)
    }

    pub fn sub(&self, u: usize, v: usize) -> usize {
        self.add(u, self.neg(v))
    }

    /// Left action `r · u`.
    #[inline]
    pub fn act(&self, r: usize, u: usize) -> usize {
        self.action[r * self.order() + u]
    }

    pub fn action_table(&self) -> Vec<Vec<usize>> {
        unflatten(&self.action, self.order())
    }

    /// True when this is `R` acting on itself by left multiplication.
    pub fn is_regular_over(&self, ring: &FiniteRing) -> bool {
        self.ring_order == ring.order()
            && self.order() == ring.order()
            && self.zero() == ring.zero()
            && (0..ring.order()).all(|a| {
                (0..ring.order())
                    .all(|b| self.add(a, b) == ring.add(a, b) && self.act(a, b) == ring.mul(a, b))
            })
    }
}

/// `R` as a left module over itself.
pub fn module_self(ring: &FiniteRing) -> LeftModule {
    let n = ring.order();
    let add = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).map(|(a, b)| ring.add(a, b)).collect();
    let action = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).map(|(a, b)| ring.mul(a, b)).collect();
    LeftModule {
        carrier: FiniteGroup::from_flat_unchecked(n, add, ring.zero()),
        ring_order: n,
        action,
    }
}

/// The direct power `R^k` with componentwise action.
///
/// A tuple `(c_0, …, c_{k-1})` has index `Σ c_i · |R|^(k-1-i)`, so `c_0` is
/// the most significant digit.
pub fn module_power(ring: &FiniteRing, k: usize) -> Result<LeftModule> {
    if k == 0 {
        return Err(Error::InvalidArgument("module power exponent must be at least 1".into()));
    }
    let n = ring.order();
    let order = (0..k)
        .try_fold(1usize, |acc, _| acc.checked_mul(n))
        .filter(|&o| o <= MAX_MODULE_ORDER)
        .ok_or_else(|| {
            Error::InvalidArgument(format!("R^{k} exceeds {MAX_MODULE_ORDER} elements"))
        })?;
    let digits = |mut x: usize| {
        let mut d = vec![0; k];
        for slot in d.iter_mut().rev() {
            *slot = x % n;
            x /= n;
        }
        d
    };
    let encode = |d: &[usize]| d.iter().fold(0, |acc, &c| acc * n + c);
    let mut add = Vec::with_capacity(order * order);
    for u in 0..order {
        let du = digits(u);
        for v in 0..order {
            let dv = digits(v);
            let s: Vec<usize> = du.iter().zip(&dv).map(|(&a, &b)| ring.add(a, b)).collect();
            add.push(encode(&s));
        }
    }
    let mut action = Vec::with_capacity(n * order);
    for r in 0..n {
        for u in 0..order {
            let d: Vec<usize> = digits(u).into_iter().map(|c| ring.mul(r, c)).collect();
            action.push(encode(&d));
        }
    }
    let zero = encode(&vec![ring.zero(); k]);
    Ok(LeftModule {
        carrier: FiniteGroup::from_flat_unchecked(order, add, zero),
        ring_order: n,
        action,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_algebra::ring::ring_zn;

    fn assert_module_laws(ring: &FiniteRing, m: &LeftModule) {
        assert_eq!(
            verify_module(ring, m.carrier(), &m.action_table()).unwrap(),
            Verdict::Pass
        );
    }

    #[test]
    fn module_self_examples() {
        let z2 = ring_zn(2).unwrap();
        assert_eq!(module_self(&z2).order(), 2);
        let z3 = ring_zn(3).unwrap();
        let m3 = module_self(&z3);
        assert_eq!(m3.act(2, 2), 1);
        assert_eq!(m3.action_table(), z3.mul_table());
        let z5 = ring_zn(5).unwrap();
        let m5 = module_self(&z5);
        assert!((0..5).all(|u| m5.act(z5.one(), u) == u));
        for r in [&z2, &z3, &z5] {
            let m = module_self(r);
            assert_module_laws(r, &m);
            assert!(m.is_regular_over(r));
        }
    }

    #[test]
    fn module_power_examples() {
        let z2 = ring_zn(2).unwrap();
        let m = module_power(&z2, 2).unwrap();
        assert_eq!(m.order(), 4);
        assert_module_laws(&z2, &m);
        assert!(!m.is_regular_over(&z2));

        let z3 = ring_zn(3).unwrap();
        let p = module_power(&z3, 1).unwrap();
        let s = module_self(&z3);
        assert_eq!(p.action_table(), s.action_table());
        assert_eq!(p.carrier().table(), s.carrier().table());

        let m3 = module_power(&z2, 3).unwrap();
        assert!((0..8).all(|u| m3.act(0, u) == m3.zero()));
        assert_module_laws(&z2, &m3);

        assert!(matches!(module_power(&z2, 0), Err(Error::InvalidArgument(_))));
        assert!(module_power(&z2, 40).is_err());
    }

    #[test]
    fn broken_action_is_rejected() {
        let z3 = ring_zn(3).unwrap();
        let m = module_self(&z3);
        let mut action = m.action_table();
        action[1][1] = 2;
        let v = verify_module(&z3, m.carrier(), &action).unwrap();
        assert_eq!(v.violation().unwrap().condition, "action-unital");
        assert!(LeftModule::new(&z3, m.carrier().clone(), &action).is_err());
    }
}
