//! Finite groups given by Cayley tables, their automorphisms and
//! endomorphisms, normal structure, and decision procedures for the
//! solvability hierarchy: solvable, supersolvable, ultrasolvable
//! (characteristic series with cyclic factors) and fully solvable
//! (fully invariant series with cyclic factors).

pub mod arith;
pub mod certificate;
pub mod classify;
pub mod error;
pub mod group;
pub mod morphisms;
pub mod structure;

pub use certificate::{ChainCertificate, InvarianceKind};
pub use classify::{Certificate, ClassifyConfig, Predicate, SkipReason, Value, Verdict};
pub use error::{GroupError, MorphismError, StructureError};
pub use group::{FiniteGroup, GroupConfig, GroupMap, PermSpec, SubgroupMask};
pub use morphisms::{MapKind, MapSet};
