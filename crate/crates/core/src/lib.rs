//! Finite multiple conjugation quandles: table-backed construction, exhaustive
//! axiom checks, Alexander pairs and their linear and affine extensions.

pub mod affine_extension;
pub mod alexander_pairs;
pub mod conditions;
pub mod error;
pub mod extension;
pub mod finite_algebra;
pub mod format;
pub mod hom;
pub mod mcq;
pub mod quandle;
pub mod setting;

pub use error::{Error, Result, Verdict, Violation};
