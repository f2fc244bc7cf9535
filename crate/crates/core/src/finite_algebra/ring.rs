use crate::error::{flatten_table, malformed, unflatten, Error, Result, Verdict, Violation};

/// A finite unital ring with `1 ≠ 0`, not necessarily commutative.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteRing {
    order: usize,
    add: Vec<usize>,
    mul: Vec<usize>,
    zero: usize,
    one: usize,
    neg: Vec<usize>,
    unit_inverse: Vec<Option<usize>>,
}

fn ring_axioms(order: usize, add: &[usize], mul: &[usize], zero: usize, one: usize) -> Verdict {
    let plus = |a: usize, b: usize| add[a * order + b];
    let times = |a: usize, b: usize| mul[a * order + b];
    let fail = |name: &str, w: Vec<usize>| Verdict::Fail(Violation::new(name, w));

    if zero == one {
        return fail("zero-ne-one", vec![zero]);
    }
    for a in 0..order {
        if plus(zero, a) != a || plus(a, zero) != a {
            return fail("add-identity", vec![a]);
        }
    }
    for a in 0..order {
        if !(0..order).any(|b| plus(a, b) == zero) {
            return fail("add-inverse", vec![a]);
        }
    }
    for a in 0..order {
        for b in 0..order {
            if plus(a, b) != plus(b, a) {
                return fail("add-commutativity", vec![a, b]);
            }
        }
    }
    for a in 0..order {
        for b in 0..order {
            for c in 0..order {
                if plus(plus(a, b), c) != plus(a, plus(b, c)) {
                    return fail("add-associativity", vec![a, b, c]);
                }
            }
        }
    }
    for a in 0..order {
        if times(one, a) != a || times(a, one) != a {
            return fail("mul-identity", vec![a]);
        }
    }
    for a in 0..order {
        for b in 0..order {
            for c in 0..order {
                if times(times(a, b), c) != times(a, times(b, c)) {
                    return fail("mul-associativity", vec![a, b, c]);
                }
            }
        }
    }
    for a in 0..order {
        for b in 0..order {
            for c in 0..order {
                if times(a, plus(b, c)) != plus(times(a, b), times(a, c)) {
                    return fail("left-distributivity", vec![a, b, c]);
                }
                if times(plus(a, b), c) != plus(times(a, c), times(b, c)) {
                    return fail("right-distributivity", vec![a, b, c]);
                }
            }
        }
    }
    Verdict::Pass
}

/// Exhaustively checks candidate ring tables.
pub fn verify_ring(
    add: &[Vec<usize>],
    mul: &[Vec<usize>],
    zero: usize,
    one: usize,
) -> Result<Verdict> {
    let order = add.len();
    if order == 0 {
        return Err(malformed("ring tables are empty"));
    }
    let add = flatten_table("ring add", add, order, order, order)?;
    let mul = flatten_table("ring mul", mul, order, order, order)?;
    if zero >= order || one >= order {
        return Err(malformed(format!(
            "zero {zero} / one {one} out of range for order {order}"
        )));
    }
    Ok(ring_axioms(order, &add, &mul, zero, one))
}

impl FiniteRing {
    pub fn from_tables(
        add: &[Vec<usize>],
        mul: &[Vec<usize>],
        zero: usize,
        one: usize,
    ) -> Result<Self> {
        verify_ring(add, mul, zero, one)?.into_result()?;
        let order = add.len();
        Ok(Self::from_flat_unchecked(
            order,
            add.iter().flatten().copied().collect(),
            mul.iter().flatten().copied().collect(),
            zero,
            one,
        ))
    }

    fn from_flat_unchecked(
        order: usize,
        add: Vec<usize>,
        mul: Vec<usize>,
        zero: usize,
        one: usize,
    ) -> Self {
        let neg = (0..order)
            .map(|a| {
                (0..order)
                    .find(|&b| add[a * order + b] == zero)
                    .expect("verified ring has additive inverses")
            })
            .collect();
        let unit_inverse = (0..order)
            .map(|u| {
                (0..order).find(|&v| mul[u * order + v] == one && mul[v * order + u] == one)
            })
            .collect();
        Self {
            order,
            add,
            mul,
            zero,
            one,
            neg,
            unit_inverse,
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn one(&self) -> usize {
        self.one
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.order + b]
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b]
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.neg[a]
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    /// Product of the factors in the order given.
    pub fn product(&self, factors: &[usize]) -> usize {
        factors.iter().fold(self.one, |acc, &f| self.mul(acc, f))
    }

    pub fn is_unit(&self, a: usize) -> bool {
        self.unit_inverse[a].is_some()
    }

    pub fn unit_inverse(&self, a: usize) -> Option<usize> {
        self.unit_inverse[a]
    }

    /// The units in ascending index order.
    pub fn units(&self) -> Vec<usize> {
        (0..self.order).filter(|&a| self.is_unit(a)).collect()
    }

    pub fn add_table(&self) -> Vec<Vec<usize>> {
        unflatten(&self.add, self.order)
    }

    pub fn mul_table(&self) -> Vec<Vec<usize>> {
        unflatten(&self.mul, self.order)
    }
}

/// `Z_n` with modular arithmetic; element `k` is the residue `k`.
pub fn ring_zn(n: usize) -> Result<FiniteRing> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "Z_n needs n >= 2 so that 1 != 0, got {n}"
        )));
    }
    let add = (0..n).flat_map(|a| (0..n).map(move |b| (a + b) % n)).collect();
    let mul = (0..n).flat_map(|a| (0..n).map(move |b| (a * b) % n)).collect();
    Ok(FiniteRing::from_flat_unchecked(n, add, mul, 0, 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zn_units() {
        assert_eq!(ring_zn(2).unwrap().units(), vec![1]);
        assert_eq!(ring_zn(6).unwrap().units(), vec![1, 5]);
        assert_eq!(ring_zn(5).unwrap().units(), vec![1, 2, 3, 4]);
        assert!(matches!(ring_zn(1), Err(Error::InvalidArgument(_))));
        assert!(matches!(ring_zn(0), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn units_match_two_sided_inverse_scan() {
        for n in 2..13 {
            let r = ring_zn(n).unwrap();
            for u in 0..n {
                let scan = (0..n).any(|v| r.mul(u, v) == 1 && r.mul(v, u) == 1);
                assert_eq!(r.is_unit(u), scan, "n={n} u={u}");
                if let Some(v) = r.unit_inverse(u) {
                    assert_eq!(r.mul(u, v), r.one());
                }
            }
        }
    }

    #[test]
    fn verify_ring_examples() {
        let z4 = ring_zn(4).unwrap();
        assert_eq!(
            verify_ring(&z4.add_table(), &z4.mul_table(), 0, 1).unwrap(),
            Verdict::Pass
        );

        let z2 = ring_zn(2).unwrap();
        let bad_mul = vec![vec![0, 0], vec![0, 0]];
        let v = verify_ring(&z2.add_table(), &bad_mul, 0, 1).unwrap();
        assert_eq!(v.violation().unwrap().condition, "mul-identity");

        let v = verify_ring(&z2.add_table(), &z2.mul_table(), 0, 0).unwrap();
        assert_eq!(v.violation().unwrap().condition, "zero-ne-one");

        assert!(matches!(
            verify_ring(&[vec![0]], &[vec![0]], 0, 0).unwrap(),
            Verdict::Fail(_)
        ));
        assert!(verify_ring(&z2.add_table(), &[vec![0, 0]], 0, 1).is_err());
    }

    #[test]
    fn distributivity_exhaustive_for_zn() {
        for n in 2..8 {
            let r = ring_zn(n).unwrap();
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        assert_eq!(r.mul(a, r.add(b, c)), r.add(r.mul(a, b), r.mul(a, c)));
                        assert_eq!(r.mul(r.add(a, b), c), r.add(r.mul(a, c), r.mul(b, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn noncommutative_upper_triangular_ring() {
        // Upper triangular 2x2 matrices over Z_2, (a, b, c) ~ [[a, b], [0, c]],
        // indexed as 4a + 2b + c.
        let enc = |a: usize, b: usize, c: usize| 4 * a + 2 * b + c;
        let dec = |k: usize| (k >> 2 & 1, k >> 1 & 1, k & 1);
        let mut add = vec![vec![0; 8]; 8];
        let mut mul = vec![vec![0; 8]; 8];
        for x in 0..8 {
            for y in 0..8 {
                let (a, b, c) = dec(x);
                let (d, e, f) = dec(y);
                add[x][y] = enc(a ^ d, b ^ e, c ^ f);
                mul[x][y] = enc(a & d, (a & e) ^ (b & f), c & f);
            }
        }
        let r = FiniteRing::from_tables(&add, &mul, 0, enc(1, 0, 1)).unwrap();
        assert_ne!(r.mul(enc(1, 0, 0), enc(0, 1, 0)), r.mul(enc(0, 1, 0), enc(1, 0, 0)));
        assert_eq!(r.units().len(), 2);
    }
}
