use std::cell::RefCell;

use crate::finite_algebra::{ComponentLayout, FiniteRing, LeftModule};
use crate::mcq::FiniteMCQ;

/// One of the six coefficient maps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Slot {
    F1,
    F2,
    F3,
    F4,
    Phi1,
    Phi2,
}

impl Slot {
    pub const ALL: [Slot; 6] = [Slot::F1, Slot::F2, Slot::F3, Slot::F4, Slot::Phi1, Slot::Phi2];

    pub fn name(self) -> &'static str {
        match self {
            Slot::F1 => "f1",
            Slot::F2 => "f2",
            Slot::F3 => "f3",
            Slot::F4 => "f4",
            Slot::Phi1 => "phi1",
            Slot::Phi2 => "phi2",
        }
    }

    /// Defined on all of `X × X` (as opposed to within-component pairs).
    pub fn on_all_pairs(self) -> bool {
        matches!(self, Slot::F1 | Slot::F2 | Slot::Phi1)
    }

    pub fn is_module_valued(self) -> bool {
        matches!(self, Slot::Phi1 | Slot::Phi2)
    }
}

/// Read access to the six maps at a pair of elements.
pub(crate) trait Tables {
    fn get(&self, s: Slot, a: usize, b: usize) -> usize;
}

/// Layout of all six maps in one flat vector: `f1, f2, phi1` as `n × n`
/// row-major tables, then `f3, f4, phi2` as concatenated per-component
/// square tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Frame {
    n: usize,
    layout: ComponentLayout,
    starts: [usize; 6],
    len: usize,
}

impl Frame {
    pub fn new(x: &FiniteMCQ) -> Self {
        let n = x.order();
        let p = x.layout().pair_count();
        let mut starts = [0; 6];
        let mut at = 0;
        for s in Slot::ALL {
            starts[s as usize] = at;
            at += if s.on_all_pairs() { n * n } else { p };
        }
        Self {
            n,
            layout: x.layout().clone(),
            starts,
            len: at,
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn slot_len(&self, s: Slot) -> usize {
        if s.on_all_pairs() {
            self.n * self.n
        } else {
            self.layout.pair_count()
        }
    }

    pub fn slot_range(&self, s: Slot) -> std::ops::Range<usize> {
        let a = self.starts[s as usize];
        a..a + self.slot_len(s)
    }

    #[inline]
    pub fn index(&self, s: Slot, a: usize, b: usize) -> usize {
        let local = if s.on_all_pairs() {
            a * self.n + b
        } else {
            self.layout.block_index(a, b)
        };
        self.starts[s as usize] + local
    }

    /// Size of the value range of each flat position.
    pub fn domains(&self, ring: &FiniteRing, module: &LeftModule) -> Vec<usize> {
        let mut d = vec![0; self.len];
        for s in Slot::ALL {
            let size = if s.is_module_valued() { module.order() } else { ring.order() };
            d[self.slot_range(s)].fill(size);
        }
        d
    }
}

pub(crate) struct FlatTables<'a> {
    pub frame: &'a Frame,
    pub values: &'a [usize],
}

impl Tables for FlatTables<'_> {
    #[inline]
    fn get(&self, s: Slot, a: usize, b: usize) -> usize {
        self.values[self.frame.index(s, a, b)]
    }
}

/// Records which positions a condition reads; every read returns `0`.
/// Positions never depend on values, so one dry run finds them all.
pub(crate) struct Recorder<'a> {
    pub frame: &'a Frame,
    pub touched: RefCell<Vec<usize>>,
}

impl Tables for Recorder<'_> {
    fn get(&self, s: Slot, a: usize, b: usize) -> usize {
        self.touched.borrow_mut().push(self.frame.index(s, a, b));
        0
    }
}
