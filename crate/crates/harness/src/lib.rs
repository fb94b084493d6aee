//! Catalog-driven verification runs for the `charseries` library: the
//! `Aut(G)` supersolvability equivalence per group, exact counts by
//! predicate, property suites, and certificate re-validation.

pub mod catalog;
pub mod count;
pub mod lemmas;
pub mod perm;
pub mod report;
pub mod verify;

pub use catalog::{ingest_catalog, CatalogEntry, CatalogError};
pub use count::{count_predicate, CountError, CountPredicate};
pub use lemmas::{verify_lemma, LemmaConfig, LemmaId, LemmaReport};
pub use verify::{recheck_records, verify_main, VerificationRecord};
