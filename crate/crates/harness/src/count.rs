use std::fmt;
use std::str::FromStr;

use charseries::classify::{
    is_fully_solvable_with, is_solvable, is_supersolvable, is_ultrasolvable_with, ClassifyConfig,
    Verdict,
};
use charseries::FiniteGroup;
use rayon::prelude::*;
use thiserror::Error;

use crate::catalog::CatalogEntry;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CountPredicate {
    Ultrasolvable,
    FullySolvable,
    Supersolvable,
    Solvable,
}

impl CountPredicate {
    pub fn evaluate(self, g: &FiniteGroup, cfg: &ClassifyConfig) -> Verdict {
        match self {
            CountPredicate::Ultrasolvable => is_ultrasolvable_with(g, cfg),
            CountPredicate::FullySolvable => is_fully_solvable_with(g, cfg),
            CountPredicate::Supersolvable => is_supersolvable(g),
            CountPredicate::Solvable => is_solvable(g),
        }
    }
}

impl FromStr for CountPredicate {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "ultrasolvable" => Ok(CountPredicate::Ultrasolvable),
            "fully-solvable" => Ok(CountPredicate::FullySolvable),
            "supersolvable" => Ok(CountPredicate::Supersolvable),
            "solvable" => Ok(CountPredicate::Solvable),
            other => Err(format!(
                "unknown predicate {other:?} (expected ultrasolvable, fully-solvable, supersolvable or solvable)"
            )),
        }
    }
}

impl fmt::Display for CountPredicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CountPredicate::Ultrasolvable => "ultrasolvable",
            CountPredicate::FullySolvable => "fully-solvable",
            CountPredicate::Supersolvable => "supersolvable",
            CountPredicate::Solvable => "solvable",
        })
    }
}

#[derive(Error, Debug, PartialEq, Eq)]
pub enum CountError {
    #[error("verdicts skipped for {}; counts must be exact", .0.join(", "))]
    SkippedEntriesPresent(Vec<String>),
}

/// Number of entries of the given order whose verdict is `true`.
pub fn count_predicate(
    entries: &[CatalogEntry],
    order: usize,
    pred: CountPredicate,
    cfg: &ClassifyConfig,
) -> Result<usize, CountError> {
    let verdicts: Vec<(&str, Verdict)> = entries
        .par_iter()
        .filter(|e| e.order() == order)
        .map(|e| (e.id(), pred.evaluate(&e.group, cfg)))
        .collect();
    let skipped: Vec<String> = verdicts
        .iter()
        .filter(|(_, v)| v.is_skipped())
        .map(|(id, _)| id.to_string())
        .collect();
    if !skipped.is_empty() {
        return Err(CountError::SkippedEntriesPresent(skipped));
    }
    Ok(verdicts.iter().filter(|(_, v)| v.is_true()).count())
}
