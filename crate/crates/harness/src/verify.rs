//! Per-group records comparing supersolvability of `Aut(G)` with the
//! structural condition, computed independently of each other.

use std::time::Instant;

use charseries::classify::{
    aut_supersolvable_from, condition2, is_fully_solvable_with, is_ultrasolvable_with,
    CheckContext, ClassifyConfig, Predicate, SkipReason, Value, Verdict,
};
use charseries::morphisms::enumerate_automorphisms;
use charseries::Certificate;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::catalog::CatalogEntry;

/// `true`, `false`, or `{"skipped": reason}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Outcome {
    Known(bool),
    Skipped { skipped: SkipReason },
}

impl Outcome {
    pub fn known(&self) -> Option<bool> {
        match self {
            Outcome::Known(b) => Some(*b),
            Outcome::Skipped { .. } => None,
        }
    }
}

impl From<Value> for Outcome {
    fn from(v: Value) -> Self {
        match v {
            Value::True => Outcome::Known(true),
            Value::False => Outcome::Known(false),
            Value::Skipped(skipped) => Outcome::Skipped { skipped },
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AutOrder {
    Known(usize),
    Skipped { skipped: SkipReason },
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub ultrasolvable_ms: f64,
    pub fully_solvable_ms: f64,
    pub aut_ms: f64,
    pub condition2_ms: f64,
}

/// Certificates of the `true` verdicts.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificates {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ultrasolvable: Option<Certificate>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fully_solvable: Option<Certificate>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub aut_supersolvable: Option<Certificate>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub condition2: Option<Certificate>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationRecord {
    pub id: String,
    pub order: usize,
    pub ultrasolvable: Outcome,
    pub fully_solvable: Outcome,
    pub aut_order: AutOrder,
    pub aut_supersolvable: Outcome,
    pub condition2: Outcome,
    pub main_theorem_agrees: Outcome,
    /// Internal inconsistency, e.g. the two direct-factor detectors
    /// disagreeing.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub timings: Timings,
    #[serde(default)]
    pub certificates: Certificates,
}

impl VerificationRecord {
    /// A record that disagrees or hit an internal error.
    pub fn is_failure(&self) -> bool {
        self.error.is_some() || self.main_theorem_agrees == Outcome::Known(false)
    }

    pub fn skip_reason(&self) -> Option<SkipReason> {
        match self.main_theorem_agrees {
            Outcome::Skipped { skipped } => Some(skipped),
            Outcome::Known(_) => None,
        }
    }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, f64) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed().as_secs_f64() * 1e3)
}

fn certificate_of(v: &Verdict) -> Option<Certificate> {
    v.is_true().then(|| v.certificate.clone()).flatten()
}

/// Both sides of the equivalence for one group. Neither side reads the
/// other's results.
pub fn verify_entry(entry: &CatalogEntry, cfg: &ClassifyConfig) -> VerificationRecord {
    let g = &entry.group;
    let (ultra, t_ultra) = timed(|| is_ultrasolvable_with(g, cfg));
    let (fully, t_fully) = timed(|| is_fully_solvable_with(g, cfg));
    let ((aut_order, aut_ss), t_aut) = timed(|| match enumerate_automorphisms(g, cfg.aut_cap) {
        Ok(autos) => (
            AutOrder::Known(autos.len()),
            aut_supersolvable_from(g, &autos),
        ),
        Err(_) => {
            let skipped = SkipReason::AutCapExceeded;
            (
                AutOrder::Skipped { skipped },
                Verdict {
                    value: Value::Skipped(skipped),
                    certificate: None,
                },
            )
        }
    });
    let (cond, t_cond) = timed(|| condition2(g, cfg));
    let (cond, error) = match cond {
        Ok(v) => (v, None),
        Err(e) => (
            Verdict {
                value: Value::False,
                certificate: None,
            },
            Some(e.to_string()),
        ),
    };
    let main_theorem_agrees = match (aut_ss.value, cond.value) {
        (Value::Skipped(r), _) | (_, Value::Skipped(r)) => Outcome::Skipped { skipped: r },
        (a, c) => Outcome::Known(a == c),
    };
    VerificationRecord {
        id: entry.id().to_string(),
        order: entry.order(),
        ultrasolvable: ultra.value.into(),
        fully_solvable: fully.value.into(),
        aut_order,
        aut_supersolvable: aut_ss.value.into(),
        condition2: cond.value.into(),
        main_theorem_agrees,
        error,
        timings: Timings {
            ultrasolvable_ms: t_ultra,
            fully_solvable_ms: t_fully,
            aut_ms: t_aut,
            condition2_ms: t_cond,
        },
        certificates: Certificates {
            ultrasolvable: certificate_of(&ultra),
            fully_solvable: certificate_of(&fully),
            aut_supersolvable: certificate_of(&aut_ss),
            condition2: certificate_of(&cond),
        },
    }
}

/// Records in catalog order; entries run on the current rayon pool.
pub fn verify_main(entries: &[CatalogEntry], cfg: &ClassifyConfig) -> Vec<VerificationRecord> {
    entries.par_iter().map(|e| verify_entry(e, cfg)).collect()
}

/// One certificate that failed re-validation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateFailure {
    pub id: String,
    pub field: &'static str,
    pub reason: String,
}

/// Re-validates every stored certificate without searching again. A
/// `true` outcome without a certificate, or a record whose id is not in
/// the catalog, is a failure as well.
pub fn recheck_records(
    entries: &[CatalogEntry],
    records: &[VerificationRecord],
    cfg: &ClassifyConfig,
) -> Vec<CertificateFailure> {
    let by_id: std::collections::HashMap<&str, &CatalogEntry> =
        entries.iter().map(|e| (e.id(), e)).collect();
    records
        .par_iter()
        .flat_map_iter(|r| {
            let mut failures = Vec::new();
            let fail = |field: &'static str, reason: String| CertificateFailure {
                id: r.id.clone(),
                field,
                reason,
            };
            let Some(entry) = by_id.get(r.id.as_str()) else {
                failures.push(fail("id", "not in catalog".into()));
                return failures;
            };
            let ctx = CheckContext::new(&entry.group, cfg);
            let c = &r.certificates;
            let fields = [
                (
                    "ultrasolvable",
                    Predicate::Ultrasolvable,
                    r.ultrasolvable,
                    &c.ultrasolvable,
                ),
                (
                    "fully_solvable",
                    Predicate::FullySolvable,
                    r.fully_solvable,
                    &c.fully_solvable,
                ),
                (
                    "aut_supersolvable",
                    Predicate::AutSupersolvable,
                    r.aut_supersolvable,
                    &c.aut_supersolvable,
                ),
                (
                    "condition2",
                    Predicate::Condition2,
                    r.condition2,
                    &c.condition2,
                ),
            ];
            for (field, pred, outcome, cert) in fields {
                if outcome != Outcome::Known(true) {
                    continue;
                }
                match cert {
                    None => failures.push(fail(field, "true verdict without a certificate".into())),
                    Some(cert) => {
                        if let Err(e) = ctx.check(pred, cert) {
                            failures.push(fail(field, e.to_string()));
                        }
                    }
                }
            }
            failures
        })
        .collect()
}
