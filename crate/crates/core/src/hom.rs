use serde::{Deserialize, Serialize};

use crate::error::{malformed, Result, Verdict};
use crate::finite_algebra::{Codomain, Domain, MapTable};

/// Result of checking a map between finite structures.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomReport {
    pub verdict: Verdict,
    pub injective: bool,
    pub surjective: bool,
    /// For surjective maps whose fibres all have the same size, that size.
    pub fiber_size: Option<usize>,
}

impl HomReport {
    pub fn is_hom(&self) -> bool {
        self.verdict.is_pass()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_hom() && self.injective && self.surjective
    }

    /// A surjective homomorphism with constant fibre cardinality.
    pub fn is_extension(&self) -> bool {
        self.is_hom() && self.fiber_size.is_some()
    }
}

pub(crate) fn map_values(f: &MapTable, source: usize, target: usize) -> Result<&[usize]> {
    if f.domain() != &Domain::Points(source) || f.codomain() != Codomain::Carrier(target) {
        return Err(malformed(format!(
            "map must be defined on {source} points with values in a carrier of {target}"
        )));
    }
    Ok(f.values())
}

pub(crate) fn fiber_stats(values: &[usize], target: usize) -> (bool, bool, Option<usize>) {
    let mut counts = vec![0usize; target];
    for &v in values {
        counts[v] += 1;
    }
    let injective = counts.iter().all(|&c| c <= 1);
    let surjective = counts.iter().all(|&c| c >= 1);
    let fiber = if surjective && counts.windows(2).all(|w| w[0] == w[1]) {
        counts.first().copied()
    } else {
        None
    };
    (injective, surjective, fiber)
}
