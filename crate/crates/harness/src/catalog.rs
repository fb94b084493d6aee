//! Catalog files: one JSON object per line,
//! `{"id": "12.3", "order": 12, "degree": 4, "name": "A4", "generators": [[0,2,3,1], ...]}`
//! with generators as 0-based image arrays. Blank lines are ignored.

use std::collections::HashSet;
use std::fs;
use std::path::Path;

use charseries::group::{from_generators, FiniteGroup, GroupConfig, PermSpec};
use charseries::GroupError;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogRecord {
    pub id: String,
    pub order: usize,
    pub degree: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub generators: Vec<Vec<usize>>,
}

/// A validated catalog record together with its Cayley table.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub record: CatalogRecord,
    pub group: FiniteGroup,
}

impl CatalogEntry {
    pub fn id(&self) -> &str {
        &self.record.id
    }

    pub fn order(&self) -> usize {
        self.record.order
    }
}

#[derive(Error, Debug)]
pub enum CatalogError {
    #[error("cannot read catalog: {0}")]
    Io(#[from] std::io::Error),
    #[error("line {line}: {message}")]
    ParseError { line: usize, message: String },
    #[error("entry {0}: generators do not close to the declared order")]
    OrderMismatch(String),
    #[error("duplicate id {0}")]
    DuplicateId(String),
    #[error("entry {id}: {source}")]
    InvalidGroup { id: String, source: GroupError },
}

/// Entries whose declared order exceeds `cfg.max_order` are dropped
/// before their tables are built.
pub fn ingest_catalog(
    path: impl AsRef<Path>,
    cfg: &GroupConfig,
) -> Result<Vec<CatalogEntry>, CatalogError> {
    parse_catalog(&fs::read_to_string(path)?, cfg)
}

pub fn parse_catalog(text: &str, cfg: &GroupConfig) -> Result<Vec<CatalogEntry>, CatalogError> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let record: CatalogRecord =
            serde_json::from_str(line).map_err(|e| CatalogError::ParseError {
                line: i + 1,
                message: e.to_string(),
            })?;
        if !seen.insert(record.id.clone()) {
            return Err(CatalogError::DuplicateId(record.id));
        }
        if record.order > cfg.max_order {
            continue;
        }
        out.push(build_entry(record, cfg)?);
    }
    Ok(out)
}

pub fn build_entry(record: CatalogRecord, cfg: &GroupConfig) -> Result<CatalogEntry, CatalogError> {
    let spec = PermSpec::new(record.degree, record.generators.clone());
    // One past the declared order is enough to detect a mismatch.
    let cap = record.order.saturating_add(1).min(cfg.max_order);
    let group = match from_generators(&spec, cap, cfg) {
        Ok(g) => g,
        Err(GroupError::ClosureExceedsCap { .. }) => {
            return Err(CatalogError::OrderMismatch(record.id))
        }
        Err(source) => {
            return Err(CatalogError::InvalidGroup {
                id: record.id,
                source,
            })
        }
    };
    if group.order() != record.order {
        return Err(CatalogError::OrderMismatch(record.id));
    }
    Ok(CatalogEntry { record, group })
}
