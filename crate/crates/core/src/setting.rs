use std::sync::Arc;

use crate::conditions::{Ctx, FlatTables, Frame, Slot};
use crate::error::{malformed, Error, Result};
use crate::finite_algebra::{module_self, verify_module, Codomain, Domain, FiniteRing, LeftModule, MapTable};
use crate::mcq::FiniteMCQ;

/// The base data every coefficient map lives over: an MCQ `X`, a ring `R`
/// and a left `R`-module `M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Setting {
    mcq: FiniteMCQ,
    ring: FiniteRing,
    module: LeftModule,
    frame: Frame,
}

impl Setting {
    /// Fails with an invalid argument when `module` is not a module over
    /// `ring`.
    pub fn new(mcq: FiniteMCQ, ring: FiniteRing, module: LeftModule) -> Result<Arc<Self>> {
        if module.ring_order() != ring.order() {
            return Err(Error::InvalidArgument(format!(
                "module is over a ring of order {}, not {}",
                module.ring_order(),
                ring.order()
            )));
        }
        if let Some(v) = verify_module(&ring, module.carrier(), &module.action_table())?.violation() {
            return Err(Error::InvalidArgument(format!("module is not a module over this ring: {v}")));
        }
        let frame = Frame::new(&mcq);
        Ok(Arc::new(Self {
            mcq,
            ring,
            module,
            frame,
        }))
    }

    /// `M = R`.
    pub fn regular(mcq: FiniteMCQ, ring: FiniteRing) -> Arc<Self> {
        let module = module_self(&ring);
        let frame = Frame::new(&mcq);
        Arc::new(Self {
            mcq,
            ring,
            module,
            frame,
        })
    }

    pub fn mcq(&self) -> &FiniteMCQ {
        &self.mcq
    }

    pub fn ring(&self) -> &FiniteRing {
        &self.ring
    }

    pub fn module(&self) -> &LeftModule {
        &self.module
    }

    /// True when `M` is `R` acting on itself.
    pub fn is_regular(&self) -> bool {
        self.module.is_regular_over(&self.ring)
    }

    pub(crate) fn ctx(&self) -> Ctx<'_> {
        Ctx {
            x: &self.mcq,
            r: &self.ring,
            m: &self.module,
        }
    }

    pub(crate) fn frame(&self) -> &Frame {
        &self.frame
    }

    pub(crate) fn tables<'a>(&'a self, values: &'a [usize]) -> FlatTables<'a> {
        FlatTables {
            frame: &self.frame,
            values,
        }
    }

    pub fn domain_of(&self, s: Slot) -> Domain {
        if s.on_all_pairs() {
            Domain::Pairs(self.mcq.order())
        } else {
            Domain::ComponentPairs(self.mcq.layout().clone())
        }
    }

    pub fn codomain_of(&self, s: Slot) -> Codomain {
        if s.is_module_valued() {
            Codomain::Module(self.module.order())
        } else {
            Codomain::Ring(self.ring.order())
        }
    }

    pub fn constant(&self, s: Slot, value: usize) -> MapTable {
        MapTable::constant(self.domain_of(s), self.codomain_of(s), value)
    }

    pub(crate) fn tabulate(&self, s: Slot, f: impl FnMut(usize, usize) -> usize) -> MapTable {
        MapTable::from_pairs(self.domain_of(s), self.codomain_of(s), f)
    }

    /// Builds the map for slot `s` from rows: `n × n` for `f1, f2, phi1`,
    /// concatenated per-component square tables for `f3, f4, phi2`.
    pub fn map_from_rows(&self, s: Slot, rows: &[Vec<usize>]) -> Result<MapTable> {
        let width_ok = match self.domain_of(s) {
            Domain::Pairs(n) => rows.len() == n && rows.iter().all(|r| r.len() == n),
            Domain::ComponentPairs(l) => {
                let mut i = 0;
                let mut ok = rows.len() == l.order();
                for c in 0..l.num_components() {
                    for _ in 0..l.size(c) {
                        ok &= rows.get(i).is_some_and(|r| r.len() == l.size(c));
                        i += 1;
                    }
                }
                ok
            }
            Domain::Points(_) => unreachable!(),
        };
        if !width_ok {
            return Err(malformed(format!("{} table has the wrong shape", s.name())));
        }
        MapTable::new(self.domain_of(s), self.codomain_of(s), rows.concat())
            .map_err(|e| malformed(format!("{}: {e}", s.name())))
    }

    /// Checks that `map` has the domain and codomain of slot `s`.
    pub(crate) fn check_shape(&self, s: Slot, map: &MapTable) -> Result<()> {
        if map.domain() != &self.domain_of(s) || map.codomain() != self.codomain_of(s) {
            return Err(malformed(format!(
                "{} must map {:?} to {:?}",
                s.name(),
                self.domain_of(s),
                self.codomain_of(s)
            )));
        }
        Ok(())
    }

    /// A map `X → R` or `X → M`.
    pub fn point_map(&self, module_valued: bool, values: Vec<usize>) -> Result<MapTable> {
        let cod = if module_valued {
            Codomain::Module(self.module.order())
        } else {
            Codomain::Ring(self.ring.order())
        };
        MapTable::new(Domain::Points(self.mcq.order()), cod, values)
    }

    /// Concatenates six maps (in [`Slot::ALL`] order) into one flat vector.
    pub(crate) fn flatten(&self, maps: [&MapTable; 6]) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.frame.len());
        for m in maps {
            out.extend_from_slice(m.values());
        }
        debug_assert_eq!(out.len(), self.frame.len());
        out
    }

    pub(crate) fn slot_map(&self, s: Slot, flat: &[usize]) -> MapTable {
        MapTable::new(self.domain_of(s), self.codomain_of(s), flat[self.frame.slot_range(s)].to_vec())
            .expect("flat values are in range")
    }
}

/// Two settings are interchangeable for comparisons between maps.
pub(crate) fn same_setting(a: &Arc<Setting>, b: &Arc<Setting>) -> Result<()> {
    if Arc::ptr_eq(a, b) || a == b {
        Ok(())
    } else {
        Err(Error::InvalidArgument(
            "tuples must share the same MCQ, ring and module".into(),
        ))
    }
}
