use crate::error::{malformed, Result};

/// A partition of `0..order` into contiguous blocks, one per component
/// group. Block `λ` occupies `offset(λ)..offset(λ) + size(λ)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ComponentLayout {
    sizes: Vec<usize>,
    offsets: Vec<usize>,
    component_of: Vec<usize>,
    block_starts: Vec<usize>,
}

impl ComponentLayout {
    pub fn from_sizes(sizes: Vec<usize>) -> Self {
        let mut offsets = Vec::with_capacity(sizes.len());
        let mut block_starts = Vec::with_capacity(sizes.len());
        let mut component_of = Vec::new();
        let (mut off, mut block) = (0, 0);
        for (c, &s) in sizes.iter().enumerate() {
            offsets.push(off);
            block_starts.push(block);
            component_of.extend(std::iter::repeat(c).take(s));
            off += s;
            block += s * s;
        }
        Self {
            sizes,
            offsets,
            component_of,
            block_starts,
        }
    }

    pub fn order(&self) -> usize {
        self.component_of.len()
    }

    pub fn num_components(&self) -> usize {
        self.sizes.len()
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn size(&self, c: usize) -> usize {
        self.sizes[c]
    }

    pub fn offset(&self, c: usize) -> usize {
        self.offsets[c]
    }

    pub fn range(&self, c: usize) -> std::ops::Range<usize> {
        self.offsets[c]..self.offsets[c] + self.sizes[c]
    }

    #[inline]
    pub fn component_of(&self, x: usize) -> usize {
        self.component_of[x]
    }

    pub fn same_component(&self, a: usize, b: usize) -> bool {
        self.component_of[a] == self.component_of[b]
    }

    /// Total number of within-component pairs, `Σ size²`.
    pub fn pair_count(&self) -> usize {
        self.sizes.iter().map(|s| s * s).sum()
    }

    /// Position of the within-component pair `(a, b)` in the concatenation
    /// of the per-component square tables.
    #[inline]
    pub fn block_index(&self, a: usize, b: usize) -> usize {
        let c = self.component_of[a];
        debug_assert_eq!(c, self.component_of[b], "({a}, {b}) straddles components");
        let off = self.offsets[c];
        self.block_starts[c] + (a - off) * self.sizes[c] + (b - off)
    }
}

/// Where a [`MapTable`] is defined.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Domain {
    /// The carrier `X` itself.
    Points(usize),
    /// All of `X × X`.
    Pairs(usize),
    /// Pairs inside a single component, `⊔ (G_λ × G_λ)`.
    ComponentPairs(ComponentLayout),
}

impl Domain {
    pub fn len(&self) -> usize {
        match self {
            Domain::Points(n) => *n,
            Domain::Pairs(n) => n * n,
            Domain::ComponentPairs(l) => l.pair_count(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    #[inline]
    pub fn pair_index(&self, a: usize, b: usize) -> usize {
        match self {
            Domain::Pairs(n) => a * n + b,
            Domain::ComponentPairs(l) => l.block_index(a, b),
            Domain::Points(_) => panic!("pair lookup on a point-indexed map"),
        }
    }
}

/// What the values of a [`MapTable`] index into.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Codomain {
    Ring(usize),
    Module(usize),
    Carrier(usize),
}

impl Codomain {
    pub fn order(self) -> usize {
        match self {
            Codomain::Ring(n) | Codomain::Module(n) | Codomain::Carrier(n) => n,
        }
    }
}

/// A total map stored as a table of indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MapTable {
    domain: Domain,
    codomain: Codomain,
    values: Vec<usize>,
}

impl MapTable {
    pub fn new(domain: Domain, codomain: Codomain, values: Vec<usize>) -> Result<Self> {
        if values.len() != domain.len() {
            return Err(malformed(format!(
                "map has {} values but its domain has {} points",
                values.len(),
                domain.len()
            )));
        }
        if let Some((i, v)) = values.iter().enumerate().find(|(_, &v)| v >= codomain.order()) {
            return Err(malformed(format!(
                "map value {v} at position {i} is out of range (< {})",
                codomain.order()
            )));
        }
        Ok(Self {
            domain,
            codomain,
            values,
        })
    }

    pub fn constant(domain: Domain, codomain: Codomain, value: usize) -> Self {
        assert!(value < codomain.order());
        let values = vec![value; domain.len()];
        Self {
            domain,
            codomain,
            values,
        }
    }

    /// Tabulates `f` over a point domain.
    pub fn from_points(n: usize, codomain: Codomain, f: impl FnMut(usize) -> usize) -> Self {
        let values: Vec<usize> = (0..n).map(f).collect();
        debug_assert!(values.iter().all(|&v| v < codomain.order()));
        Self {
            domain: Domain::Points(n),
            codomain,
            values,
        }
    }

    /// Tabulates `f` over a pair domain in storage order.
    pub fn from_pairs(domain: Domain, codomain: Codomain, mut f: impl FnMut(usize, usize) -> usize) -> Self {
        let mut values = Vec::with_capacity(domain.len());
        match &domain {
            Domain::Pairs(n) => {
                for a in 0..*n {
                    for b in 0..*n {
                        values.push(f(a, b));
                    }
                }
            }
            Domain::ComponentPairs(l) => {
                for c in 0..l.num_components() {
                    for a in l.range(c) {
                        for b in l.range(c) {
                            values.push(f(a, b));
                        }
                    }
                }
            }
            Domain::Points(_) => panic!("from_pairs needs a pair domain"),
        }
        debug_assert!(values.iter().all(|&v| v < codomain.order()));
        Self {
            domain,
            codomain,
            values,
        }
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn codomain(&self) -> Codomain {
        self.codomain
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    /// Replaces one stored value (by storage position).
    pub fn set_value(&mut self, position: usize, value: usize) -> Result<()> {
        if position >= self.values.len() || value >= self.codomain.order() {
            return Err(malformed(format!("cannot set position {position} to {value}")));
        }
        self.values[position] = value;
        Ok(())
    }

    #[inline]
    pub fn at(&self, x: usize) -> usize {
        debug_assert!(matches!(self.domain, Domain::Points(_)));
        self.values[x]
    }

    #[inline]
    pub fn at2(&self, a: usize, b: usize) -> usize {
        self.values[self.domain.pair_index(a, b)]
    }

    /// Rows of an `X × X` table.
    pub fn rows(&self) -> Vec<Vec<usize>> {
        match &self.domain {
            Domain::Pairs(n) => crate::error::unflatten(&self.values, *n),
            Domain::Points(_) => vec![self.values.clone()],
            Domain::ComponentPairs(_) => self.blocks().concat(),
        }
    }

    /// Per-component square tables of a `⊔ (G_λ × G_λ)` map.
    pub fn blocks(&self) -> Vec<Vec<Vec<usize>>> {
        match &self.domain {
            Domain::ComponentPairs(l) => (0..l.num_components())
                .map(|c| {
                    let s = l.size(c);
                    let start = l.block_index(l.offset(c), l.offset(c));
                    crate::error::unflatten(&self.values[start..start + s * s], s)
                })
                .collect(),
            _ => panic!("blocks() needs a component-pair domain"),
        }
    }

    /// True when every value is hit; only meaningful for point maps.
    pub fn is_bijective(&self) -> bool {
        let n = self.codomain.order();
        if self.values.len() != n {
            return false;
        }
        let mut seen = vec![false; n];
        self.values.iter().all(|&v| !std::mem::replace(&mut seen[v], true))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn layout_indices() {
        let l = ComponentLayout::from_sizes(vec![2, 1, 3]);
        assert_eq!(l.order(), 6);
        assert_eq!(l.pair_count(), 4 + 1 + 9);
        assert_eq!(l.component_of(3), 2);
        assert_eq!(l.block_index(0, 1), 1);
        assert_eq!(l.block_index(2, 2), 4);
        assert_eq!(l.block_index(3, 3), 5);
        assert_eq!(l.block_index(5, 4), 5 + 2 * 3 + 1);
    }

    #[test]
    fn totality_and_range_are_enforced() {
        assert!(MapTable::new(Domain::Pairs(2), Codomain::Ring(2), vec![0, 1, 1]).is_err());
        assert!(MapTable::new(Domain::Pairs(2), Codomain::Ring(2), vec![0, 1, 1, 2]).is_err());
        let m = MapTable::new(Domain::Pairs(2), Codomain::Ring(3), vec![0, 1, 2, 0]).unwrap();
        assert_eq!(m.at2(1, 0), 2);
        assert_eq!(m.rows(), vec![vec![0, 1], vec![2, 0]]);
    }

    #[test]
    fn component_blocks_round_trip() {
        let l = ComponentLayout::from_sizes(vec![1, 2]);
        let m = MapTable::from_pairs(Domain::ComponentPairs(l), Codomain::Module(9), |a, b| 3 * a + b);
        assert_eq!(m.blocks(), vec![vec![vec![0]], vec![vec![4, 5], vec![7, 8]]]);
        assert_eq!(m.at2(2, 1), 7);
    }

    #[test]
    fn bijectivity() {
        assert!(MapTable::new(Domain::Points(3), Codomain::Carrier(3), vec![2, 0, 1])
            .unwrap()
            .is_bijective());
        assert!(!MapTable::new(Domain::Points(3), Codomain::Carrier(3), vec![2, 2, 1])
            .unwrap()
            .is_bijective());
    }
}
