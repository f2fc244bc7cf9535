//! Table-backed finite groups, rings and left modules.
//!
//! Elements are dense indices `0..order` and every operation is a total
//! table, so each axiom check is an exhaustive loop.

mod group;
mod map_table;
mod module;
mod ring;

pub use group::{cyclic_group, symmetric_group, verify_group, FiniteGroup, RawGroup};
pub use map_table::{Codomain, ComponentLayout, Domain, MapTable};
pub use module::{module_power, module_self, verify_module, LeftModule, MAX_MODULE_ORDER};
pub use ring::{ring_zn, verify_ring, FiniteRing};

pub(crate) use group::group_axioms;
#[cfg(test)]
pub(crate) use group::permutations;
