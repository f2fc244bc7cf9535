use crate::error::{flatten_table, malformed, unflatten, Error, Result, Verdict, Violation};

/// A finite group given by its Cayley table over the indices `0..order`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteGroup {
    order: usize,
    cayley: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
}

/// A group table as it appears in files or candidate constructions,
/// before verification.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RawGroup {
    pub table: Vec<Vec<usize>>,
    pub identity: usize,
}

impl RawGroup {
    /// Uses the two-sided identity of the table if it has one, and `0`
    /// otherwise (verification then reports the identity failure).
    pub fn with_located_identity(table: Vec<Vec<usize>>) -> Self {
        let order = table.len();
        let identity = (0..order)
            .find(|&e| (0..order).all(|a| table[e].get(a) == Some(&a) && table[a].get(e) == Some(&a)))
            .unwrap_or(0);
        Self { table, identity }
    }
}

/// Scans the group axioms on a flat `order × order` table.
///
/// Identity is checked first, then two-sided inverses, then
/// associativity; the first failing element (or triple) in ascending
/// index order is reported.
pub(crate) fn group_axioms(order: usize, cayley: &[usize], identity: usize) -> Verdict {
    let op = |a: usize, b: usize| cayley[a * order + b];
    for a in 0..order {
        if op(identity, a) != a || op(a, identity) != a {
            return Verdict::Fail(Violation::new("identity", vec![a]));
        }
    }
    for a in 0..order {
        if !(0..order).any(|b| op(a, b) == identity && op(b, a) == identity) {
            return Verdict::Fail(Violation::new("inverse", vec![a]));
        }
    }
    for a in 0..order {
        for b in 0..order {
            let ab = op(a, b);
            for c in 0..order {
                if op(ab, c) != op(a, op(b, c)) {
                    return Verdict::Fail(Violation::new("associativity", vec![a, b, c]));
                }
            }
        }
    }
    Verdict::Pass
}

/// Exhaustively checks a candidate group table.
///
/// Ragged tables, out-of-range entries and an out-of-range identity are
/// malformed input rather than failed axioms.
pub fn verify_group(table: &[Vec<usize>], identity: usize) -> Result<Verdict> {
    let order = table.len();
    if order == 0 {
        return Err(malformed("group table is empty"));
    }
    let cayley = flatten_table("group table", table, order, order, order)?;
    if identity >= order {
        return Err(malformed(format!(
            "identity {identity} is out of range for order {order}"
        )));
    }
    Ok(group_axioms(order, &cayley, identity))
}

impl FiniteGroup {
    /// Builds a group from a verified table; an axiom failure is returned
    /// as [`Error::Axiom`].
    pub fn from_table(table: &[Vec<usize>], identity: usize) -> Result<Self> {
        verify_group(table, identity)?.into_result()?;
        let order = table.len();
        let cayley = table.iter().flatten().copied().collect();
        Ok(Self::from_flat_unchecked(order, cayley, identity))
    }

    /// Builds a group from a flat table whose axioms have already been
    /// checked.
    pub(crate) fn from_flat_unchecked(order: usize, cayley: Vec<usize>, identity: usize) -> Self {
        let inverse = (0..order)
            .map(|a| {
                (0..order)
                    .find(|&b| cayley[a * order + b] == identity)
                    .expect("verified group has inverses")
            })
            .collect();
        Self {
            order,
            cayley,
            identity,
            inverse,
        }
    }

    pub fn trivial() -> Self {
        Self::from_flat_unchecked(1, vec![0], 0)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.cayley[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// `b⁻¹ a b`
    pub fn conjugate(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv(b), a), b)
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        unflatten(&self.cayley, self.order)
    }

    pub fn to_raw(&self) -> RawGroup {
        RawGroup {
            table: self.table(),
            identity: self.identity,
        }
    }

    pub fn flat_table(&self) -> &[usize] {
        &self.cayley
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Order of the element `a`.
    pub fn element_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }
}

/// The cyclic group `Z_n` under addition, identity `0`.
pub fn cyclic_group(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::InvalidArgument("cyclic group order must be at least 1".into()));
    }
    let cayley = (0..n).flat_map(|a| (0..n).map(move |b| (a + b) % n)).collect();
    Ok(FiniteGroup::from_flat_unchecked(n, cayley, 0))
}

/// The symmetric group on `n` letters. Elements are the permutations in
/// lexicographic order (so the identity is `0`), and the product `ab`
/// applies `a` first, then `b`.
pub fn symmetric_group(n: usize) -> Result<FiniteGroup> {
    if n == 0 || n > 6 {
        return Err(Error::InvalidArgument(format!(
            "symmetric group degree must be in 1..=6, got {n}"
        )));
    }
    let perms = permutations(n);
    let index = |p: &[usize]| perms.binary_search_by(|q| q.as_slice().cmp(p)).expect("permutation");
    let order = perms.len();
    let mut cayley = Vec::with_capacity(order * order);
    for a in &perms {
        for b in &perms {
            let ab: Vec<usize> = (0..n).map(|i| b[a[i]]).collect();
            cayley.push(index(&ab));
        }
    }
    Ok(FiniteGroup::from_flat_unchecked(order, cayley, 0))
}

pub(crate) fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::with_capacity(n), &mut vec![false; n], &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_group_laws(g: &FiniteGroup) {
        for a in 0..g.order() {
            assert_eq!(g.mul(g.identity(), a), a);
            assert_eq!(g.mul(a, g.inv(a)), g.identity());
            assert_eq!(g.mul(g.inv(a), a), g.identity());
        }
    }

    #[test]
    fn cyclic_examples() {
        let z1 = cyclic_group(1).unwrap();
        assert_eq!(z1.order(), 1);
        assert_eq!(z1.table(), vec![vec![0]]);
        let z2 = cyclic_group(2).unwrap();
        assert_eq!(z2.table(), vec![vec![0, 1], vec![1, 0]]);
        let z6 = cyclic_group(6).unwrap();
        assert_eq!(z6.order(), 6);
        assert_eq!(z6.inv(2), 4);
        assert!(matches!(cyclic_group(0), Err(Error::InvalidArgument(_))));
        for n in 1..8 {
            assert_group_laws(&cyclic_group(n).unwrap());
        }
    }

    #[test]
    fn verify_group_examples() {
        let z3 = cyclic_group(3).unwrap();
        assert_eq!(verify_group(&z3.table(), 0).unwrap(), Verdict::Pass);

        let bad = vec![vec![0, 1], vec![0, 0]];
        assert_eq!(
            verify_group(&bad, 0).unwrap(),
            Verdict::Fail(Violation::new("identity", vec![1]))
        );

        let out_of_range = vec![vec![0, 5], vec![1, 0]];
        assert!(matches!(verify_group(&out_of_range, 0), Err(Error::Malformed(_))));
        assert!(matches!(verify_group(&[vec![0, 1], vec![1]], 0), Err(Error::Malformed(_))));
        assert!(matches!(verify_group(&z3.table(), 3), Err(Error::Malformed(_))));
    }

    #[test]
    fn non_associative_latin_square_fails() {
        // A loop of order 5 with identity 0 that is not a group.
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        let v = verify_group(&t, 0).unwrap();
        assert_eq!(v.violation().unwrap().condition, "associativity");
    }

    #[test]
    fn symmetric_group_three() {
        let s3 = symmetric_group(3).unwrap();
        assert_eq!(s3.order(), 6);
        assert!(!s3.is_abelian());
        assert_eq!(verify_group(&s3.table(), 0).unwrap(), Verdict::Pass);
        assert_group_laws(&s3);
        let orders: Vec<_> = (0..6).map(|a| s3.element_order(a)).collect();
        assert_eq!(orders.iter().filter(|&&o| o == 2).count(), 3);
        assert_eq!(orders.iter().filter(|&&o| o == 3).count(), 2);
    }

}
