//! Finite quandles.

use crate::error::{flatten_table, malformed, unflatten, Error, Result, Verdict, Violation};
use crate::finite_algebra::{FiniteGroup, MapTable};
use crate::hom::{fiber_stats, map_values, HomReport};

/// A finite quandle; `op(a, b)` is `a ◁ b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteQuandle {
    order: usize,
    op: Vec<usize>,
}

fn quandle_axioms(order: usize, op: &[usize]) -> Verdict {
    let tri = |a: usize, b: usize| op[a * order + b];
    for a in 0..order {
        if tri(a, a) != a {
            return Verdict::Fail(Violation::new("Q1", vec![a]));
        }
    }
    for b in 0..order {
        let mut preimage = vec![usize::MAX; order];
        for a in 0..order {
            let c = tri(a, b);
            if preimage[c] != usize::MAX {
                return Verdict::Fail(Violation::new("Q2", vec![b, preimage[c], a]));
            }
            preimage[c] = a;
        }
    }
    for a in 0..order {
        for b in 0..order {
            for c in 0..order {
                if tri(tri(a, b), c) != tri(tri(a, c), tri(b, c)) {
                    return Verdict::Fail(Violation::new("Q3", vec![a, b, c]));
                }
            }
        }
    }
    Verdict::Pass
}

/// Checks (Q1) idempotence, (Q2) bijectivity of every `S_b`, and (Q3)
/// right self-distributivity. A Q2 witness is `(b, a1, a2)` with
/// `a1 ◁ b = a2 ◁ b`.
pub fn verify_quandle(table: &[Vec<usize>]) -> Result<Verdict> {
    let order = table.len();
    if order == 0 {
        return Err(malformed("quandle table is empty"));
    }
    let op = flatten_table("quandle table", table, order, order, order)?;
    Ok(quandle_axioms(order, &op))
}

impl FiniteQuandle {
    pub fn from_table(table: &[Vec<usize>]) -> Result<Self> {
        verify_quandle(table)?.into_result()?;
        Ok(Self {
            order: table.len(),
            op: table.iter().flatten().copied().collect(),
        })
    }

    pub(crate) fn from_flat_unchecked(order: usize, op: Vec<usize>) -> Self {
        debug_assert!(quandle_axioms(order, &op).is_pass());
        Self { order, op }
    }

    pub fn trivial(order: usize) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidArgument("quandle order must be at least 1".into()));
        }
        let op = (0..order).flat_map(|a| std::iter::repeat(a).take(order)).collect();
        Ok(Self { order, op })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn op(&self, a: usize, b: usize) -> usize {
        self.op[a * self.order + b]
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        unflatten(&self.op, self.order)
    }

    pub fn is_trivial(&self) -> bool {
        (0..self.order).all(|a| (0..self.order).all(|b| self.op(a, b) == a))
    }

    /// `a ◁^k b`, the `k`-fold application of `S_b`.
    pub fn op_power(&self, a: usize, b: usize, k: usize) -> usize {
        (0..k).fold(a, |x, _| self.op(x, b))
    }

    /// The least `n > 0` with `a ◁ⁿ b = a` for all `a, b`, computed as the
    /// lcm of the cycle lengths of every column permutation `S_b`.
    pub fn quandle_type(&self) -> usize {
        let mut acc = 1;
        for b in 0..self.order {
            let mut seen = vec![false; self.order];
            for start in 0..self.order {
                if seen[start] {
                    continue;
                }
                let mut len = 0;
                let mut x = start;
                while !seen[x] {
                    seen[x] = true;
                    x = self.op(x, b);
                    len += 1;
                }
                acc = lcm(acc, len);
            }
        }
        acc
    }
}

pub(crate) fn lcm(a: usize, b: usize) -> usize {
    a / gcd_usize(a, b) * b
}

/// The conjugation quandle `a ◁ b = b⁻¹ab`.
pub fn conj_quandle(g: &FiniteGroup) -> FiniteQuandle {
    let n = g.order();
    let op = (0..n).flat_map(|a| (0..n).map(move |b| g.conjugate(a, b))).collect();
    FiniteQuandle::from_flat_unchecked(n, op)
}

/// The dihedral quandle `R_n`: `a ◁ b = 2b − a (mod n)`.
pub fn dihedral_quandle(n: usize) -> Result<FiniteQuandle> {
    if n == 0 {
        return Err(Error::InvalidArgument("dihedral quandle order must be at least 1".into()));
    }
    let op = (0..n).flat_map(|a| (0..n).map(move |b| (2 * b + n - a) % n)).collect();
    Ok(FiniteQuandle::from_flat_unchecked(n, op))
}

/// The Alexander quandle on `Z_n`: `a ◁ b = t·a + (1 − t)·b (mod n)`;
/// `t` must be a unit.
pub fn alexander_quandle_zn(n: usize, t: usize) -> Result<FiniteQuandle> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("Alexander quandle needs n >= 2, got {n}")));
    }
    let t = t % n;
    if gcd_usize(t, n) != 1 {
        return Err(Error::InvalidArgument(format!("{t} is not a unit modulo {n}")));
    }
    let s = (1 + n - t) % n;
    let op = (0..n).flat_map(|a| (0..n).map(move |b| (t * a + s * b) % n)).collect();
    Ok(FiniteQuandle::from_flat_unchecked(n, op))
}

pub(crate) fn gcd_usize(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd_usize(b, a % b)
    }
}

/// Checks `f(a ◁ b) = f(a) ◁ f(b)` exhaustively and reports injectivity,
/// surjectivity and whether the fibres have constant size.
pub fn check_quandle_hom(f: &MapTable, q1: &FiniteQuandle, q2: &FiniteQuandle) -> Result<HomReport> {
    let values = map_values(f, q1.order(), q2.order())?;
    let mut verdict = Verdict::Pass;
    'outer: for a in 0..q1.order() {
        for b in 0..q1.order() {
            if values[q1.op(a, b)] != q2.op(values[a], values[b]) {
                verdict = Verdict::Fail(Violation::new("hom-triangle", vec![a, b]));
                break 'outer;
            }
        }
    }
    let (injective, surjective, fiber_size) = fiber_stats(values, q2.order());
    Ok(HomReport {
        verdict,
        injective,
        surjective,
        fiber_size,
    })
}
