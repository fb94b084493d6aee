//! Property suites run over catalog entries. Each suite reports pass, fail
//! or skip (with a reason) per entry it applies to.

use std::fmt;
use std::str::FromStr;

use charseries::arith::{prime_divisors, prime_power};
use charseries::classify::{
    abelian_aut_supersolvable_rule, aut_supersolvable, has_sylow_tower_tail, is_a_solvable,
    is_fully_solvable_with, is_solvable, is_strictly_p_closed, is_supersolvable,
    is_ultrasolvable_with, ClassifyConfig, Verdict,
};
use charseries::group::{quotient, FiniteGroup, GroupConfig, GroupMap};
use charseries::morphisms::{
    aut_as_group, count_automorphisms, enumerate_automorphisms, inner_automorphisms, AutGroup,
};
use charseries::structure::{abelian_invariants, frattini_pgroup, o_pi, o_pp_prime, PrimeSet};
use charseries::{MapKind, MapSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::catalog::CatalogEntry;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LemmaId {
    SylowTower,
    Pcore,
    Baer,
    AbelianRule,
    PgroupEquiv,
    TwoGroupCorollary,
    CorsiTani,
    Hierarchy,
    DurbinMcdonald,
    StrictClosure,
}

impl LemmaId {
    pub const ALL: [LemmaId; 10] = [
        LemmaId::SylowTower,
        LemmaId::Pcore,
        LemmaId::Baer,
        LemmaId::AbelianRule,
        LemmaId::PgroupEquiv,
        LemmaId::TwoGroupCorollary,
        LemmaId::CorsiTani,
        LemmaId::Hierarchy,
        LemmaId::DurbinMcdonald,
        LemmaId::StrictClosure,
    ];

    pub fn name(self) -> &'static str {
        match self {
            LemmaId::SylowTower => "sylow-tower",
            LemmaId::Pcore => "pcore",
            LemmaId::Baer => "baer",
            LemmaId::AbelianRule => "abelian-rule",
            LemmaId::PgroupEquiv => "pgroup-equiv",
            LemmaId::TwoGroupCorollary => "two-group-corollary",
            LemmaId::CorsiTani => "corsi-tani",
            LemmaId::Hierarchy => "hierarchy",
            LemmaId::DurbinMcdonald => "durbin-mcdonald",
            LemmaId::StrictClosure => "strict-closure",
        }
    }
}

impl fmt::Display for LemmaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Error, Debug, PartialEq, Eq)]
#[error("unknown lemma {0:?}")]
pub struct UnknownLemma(pub String);

impl FromStr for LemmaId {
    type Err = UnknownLemma;

    fn from_str(s: &str) -> Result<Self, UnknownLemma> {
        LemmaId::ALL
            .into_iter()
            .find(|l| l.name() == s)
            .ok_or_else(|| UnknownLemma(s.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", content = "detail", rename_all = "kebab-case")]
pub enum RowOutcome {
    Pass,
    Fail(String),
    Skip(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaRow {
    pub id: String,
    #[serde(flatten)]
    pub outcome: RowOutcome,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub lemma: String,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub rows: Vec<LemmaRow>,
}

impl LemmaReport {
    fn new(lemma: LemmaId, rows: Vec<LemmaRow>) -> Self {
        let count = |f: fn(&RowOutcome) -> bool| rows.iter().filter(|r| f(&r.outcome)).count();
        LemmaReport {
            lemma: lemma.name().to_string(),
            passed: count(|o| *o == RowOutcome::Pass),
            failed: count(|o| matches!(o, RowOutcome::Fail(_))),
            skipped: count(|o| matches!(o, RowOutcome::Skip(_))),
            rows,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LemmaConfig {
    pub classify: ClassifyConfig,
    pub seed: u64,
    /// Random 2-generated subgroups of `Aut(P)` per group in `pgroup-equiv`.
    pub samples: usize,
    /// Largest order considered by `pgroup-equiv`.
    pub equiv_max_order: usize,
    /// Automorphisms counted (not stored) by `two-group-corollary` before
    /// the row is skipped.
    pub count_cap: usize,
}

impl Default for LemmaConfig {
    fn default() -> Self {
        LemmaConfig {
            classify: ClassifyConfig::default(),
            seed: 0,
            samples: 20,
            equiv_max_order: 16,
            count_cap: 1 << 24,
        }
    }
}

/// Runs one suite over the entries it applies to, in catalog order.
pub fn verify_lemma(entries: &[CatalogEntry], lemma: LemmaId, cfg: &LemmaConfig) -> LemmaReport {
    let rows = entries
        .par_iter()
        .filter_map(|e| {
            check_entry(e, lemma, cfg).map(|outcome| LemmaRow {
                id: e.id().to_string(),
                outcome,
            })
        })
        .collect();
    LemmaReport::new(lemma, rows)
}

/// `None` when the suite does not apply to the entry.
fn check_entry(e: &CatalogEntry, lemma: LemmaId, cfg: &LemmaConfig) -> Option<RowOutcome> {
    let g = &e.group;
    let c = &cfg.classify;
    match lemma {
        LemmaId::Hierarchy => Some(hierarchy(g, c)),
        LemmaId::DurbinMcdonald => Some(durbin_mcdonald(g, c)),
        LemmaId::CorsiTani => {
            let p = pgroup_prime(g)?;
            let klein = g.order() == 4 && p == 2 && g.exponent() == 2;
            (!klein).then(|| corsi_tani(g, c))
        }
        LemmaId::TwoGroupCorollary => (pgroup_prime(g)? == 2).then(|| two_group_corollary(g, cfg)),
        LemmaId::SylowTower => Some(sylow_tower(g)),
        LemmaId::Pcore => {
            let p = pgroup_prime(g)?;
            (!g.is_abelian()).then(|| pcore(g, p, c))
        }
        LemmaId::Baer => Some(baer(g)),
        LemmaId::StrictClosure => Some(strict_closure(g)),
        LemmaId::AbelianRule => g.is_abelian().then(|| abelian_rule(g, c)),
        LemmaId::PgroupEquiv => {
            let p = pgroup_prime(g)?;
            (g.order() <= cfg.equiv_max_order).then(|| pgroup_equiv(g, p, e.id(), cfg))
        }
    }
}

fn pgroup_prime(g: &FiniteGroup) -> Option<usize> {
    prime_power(g.order()).map(|(p, _)| p)
}

fn known(v: &Verdict) -> Result<bool, RowOutcome> {
    v.truth()
        .ok_or_else(|| RowOutcome::Skip(format!("{:?}", v.value)))
}

fn outcome(failures: Vec<String>) -> RowOutcome {
    if failures.is_empty() {
        RowOutcome::Pass
    } else {
        RowOutcome::Fail(failures.join("; "))
    }
}

macro_rules! known_or_skip {
    ($v:expr) => {
        match known(&$v) {
            Ok(b) => b,
            Err(skip) => return skip,
        }
    };
}

fn hierarchy(g: &FiniteGroup, c: &ClassifyConfig) -> RowOutcome {
    let fully = known_or_skip!(is_fully_solvable_with(g, c));
    let ultra = known_or_skip!(is_ultrasolvable_with(g, c));
    let inner = known_or_skip!(is_a_solvable(g, &inner_automorphisms(g)));
    let solvable = known_or_skip!(is_solvable(g));
    let supersolvable = known_or_skip!(is_supersolvable(g));
    let mut failures = Vec::new();
    if fully && !ultra {
        failures.push("fully solvable but not ultrasolvable".to_string());
    }
    if ultra && !inner {
        failures.push("ultrasolvable but not Inn-solvable".to_string());
    }
    if inner && !solvable {
        failures.push("Inn-solvable but not solvable".to_string());
    }
    if inner != supersolvable {
        failures.push(format!(
            "Inn-solvable {inner} but chief-series supersolvable {supersolvable}"
        ));
    }
    outcome(failures)
}

fn durbin_mcdonald(g: &FiniteGroup, c: &ClassifyConfig) -> RowOutcome {
    let aut_ss = known_or_skip!(aut_supersolvable(g, c.aut_cap));
    let ultra = known_or_skip!(is_ultrasolvable_with(g, c));
    outcome(if ultra && !aut_ss {
        vec!["ultrasolvable but Aut not supersolvable".into()]
    } else {
        vec![]
    })
}

fn corsi_tani(g: &FiniteGroup, c: &ClassifyConfig) -> RowOutcome {
    let aut_ss = known_or_skip!(aut_supersolvable(g, c.aut_cap));
    let ultra = known_or_skip!(is_ultrasolvable_with(g, c));
    outcome(if aut_ss != ultra {
        vec![format!("Aut supersolvable {aut_ss}, ultrasolvable {ultra}")]
    } else {
        vec![]
    })
}

fn two_group_corollary(g: &FiniteGroup, cfg: &LemmaConfig) -> RowOutcome {
    let ultra = known_or_skip!(is_ultrasolvable_with(g, &cfg.classify));
    let aut_order = match count_automorphisms(g, cfg.count_cap) {
        Ok(n) => n,
        Err(e) => return RowOutcome::Skip(e.to_string()),
    };
    let two_power = aut_order.is_power_of_two();
    outcome(if ultra != two_power {
        vec![format!("ultrasolvable {ultra}, |Aut| = {aut_order}")]
    } else {
        vec![]
    })
}

fn sylow_tower(g: &FiniteGroup) -> RowOutcome {
    if !is_supersolvable(g).is_true() {
        return RowOutcome::Skip("not supersolvable".into());
    }
    let top = prime_divisors(g.order()).last().copied().unwrap_or(1);
    outcome(
        (2..=top + 1)
            .filter(|&n| !has_sylow_tower_tail(g, n).is_true())
            .map(|n| format!("no normal Hall subgroup for primes >= {n}"))
            .collect(),
    )
}

fn aut_group(g: &FiniteGroup, c: &ClassifyConfig) -> Result<AutGroup, RowOutcome> {
    let autos =
        enumerate_automorphisms(g, c.aut_cap).map_err(|e| RowOutcome::Skip(e.to_string()))?;
    aut_as_group(g, &autos).map_err(|e| RowOutcome::Skip(e.to_string()))
}

fn pcore(g: &FiniteGroup, p: usize, c: &ClassifyConfig) -> RowOutcome {
    let aut = match aut_group(g, c) {
        Ok(a) => a,
        Err(skip) => return skip,
    };
    let core = o_pi(&aut.group, &PrimeSet::complement_of(p));
    outcome(if core.is_trivial() {
        vec![]
    } else {
        vec![format!("O_p'(Aut) has order {}", core.popcount())]
    })
}

fn baer(g: &FiniteGroup) -> RowOutcome {
    let supersolvable = is_supersolvable(g).is_true();
    outcome(
        prime_divisors(g.order())
            .into_iter()
            .filter(|&p| is_strictly_p_closed(g, p).is_true() && !supersolvable)
            .map(|p| format!("strictly {p}-closed but not supersolvable"))
            .collect(),
    )
}

/// For supersolvable `G`: trivial `O_p'(G)` forces strict `p`-closure, and
/// strict `p`-closure of `G`, of `O_pp'(G)`, and `O_pp'(G)/O_p(G)` being
/// abelian of exponent dividing `p - 1` all agree.
fn strict_closure(g: &FiniteGroup) -> RowOutcome {
    if !is_supersolvable(g).is_true() {
        return RowOutcome::Skip("not supersolvable".into());
    }
    let mut failures = Vec::new();
    for p in prime_divisors(g.order()) {
        let closed = is_strictly_p_closed(g, p).is_true();
        if o_pi(g, &PrimeSet::complement_of(p)).is_trivial() && !closed {
            failures.push(format!("O_{p}' trivial but not strictly {p}-closed"));
        }
        let opp = o_pp_prime(g, p);
        let op = o_pi(g, &PrimeSet::single(p));
        let section_ok = opp.members().all(|x| {
            op.contains(g.pow(x, p - 1)) && opp.members().all(|y| op.contains(g.commutator(x, y)))
        });
        let (opp_group, _) = g
            .subgroup_as_group(&opp, &GroupConfig::default())
            .expect("O_pp' is a subgroup");
        let opp_closed = is_strictly_p_closed(&opp_group, p).is_true();
        if closed != opp_closed || closed != section_ok {
            failures.push(format!(
                "p = {p}: G {closed}, O_pp' {opp_closed}, section {section_ok}"
            ));
        }
    }
    outcome(failures)
}

fn abelian_rule(g: &FiniteGroup, c: &ClassifyConfig) -> RowOutcome {
    let aut_ss = known_or_skip!(aut_supersolvable(g, c.aut_cap));
    let ultra = known_or_skip!(is_ultrasolvable_with(g, c));
    let fully = known_or_skip!(is_fully_solvable_with(g, c));
    let inv = abelian_invariants(g).expect("abelian");
    let rule = abelian_aut_supersolvable_rule(&inv);
    let mut failures = Vec::new();
    if rule != aut_ss {
        failures.push(format!(
            "rule {rule} but Aut supersolvable {aut_ss} for {:?}",
            inv.0
        ));
    }
    if ultra != fully {
        failures.push(format!("ultrasolvable {ultra} but fully solvable {fully}"));
    }
    outcome(failures)
}

/// Stable per-entry seed so results do not depend on scheduling.
fn entry_seed(seed: u64, id: &str) -> u64 {
    id.bytes().fold(seed ^ 0xcbf2_9ce4_8422_2325, |h, b| {
        (h ^ u64::from(b)).wrapping_mul(0x0100_0000_01b3)
    })
}

/// For subgroups `A` of `Aut(P)`: `P` is `A`-solvable iff `P/Phi(P)` is
/// solvable under the induced action iff `A` is strictly `p`-closed. `A`
/// runs over every cyclic subgroup and seeded random 2-generated ones.
fn pgroup_equiv(g: &FiniteGroup, p: usize, id: &str, cfg: &LemmaConfig) -> RowOutcome {
    let aut = match aut_group(g, &cfg.classify) {
        Ok(a) => a,
        Err(skip) => return skip,
    };
    let phi = frattini_pgroup(g, p).expect("p-group");
    let (q, proj) = quotient(g, &phi).expect("Frattini subgroup is normal");
    let m = aut.group.order();

    let mut subgroups: Vec<Vec<usize>> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for a in 0..m {
        if seen.insert(aut.group.generate([a])) {
            subgroups.push(vec![a]);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(entry_seed(cfg.seed, id));
    for _ in 0..cfg.samples {
        subgroups.push(vec![rng.gen_range(0..m), rng.gen_range(0..m)]);
    }

    let mut failures = Vec::new();
    for gens in subgroups {
        let maps = MapSet::new(
            MapKind::Automorphisms,
            gens.iter().map(|&i| aut.maps[i].clone()).collect(),
            false,
        );
        let on_p = is_a_solvable(g, &maps).is_true();
        let induced = induced_maps(g, &q, &proj, &maps);
        let on_frattini_quotient = is_a_solvable(&q, &induced).is_true();
        let mask = aut.group.generate(gens.iter().copied());
        let (a, _) = aut
            .group
            .subgroup_as_group(&mask, &GroupConfig::default())
            .expect("subgroup");
        let closed = is_strictly_p_closed(&a, p).is_true();
        if on_p != on_frattini_quotient || on_p != closed {
            failures.push(format!(
                "A = <{gens:?}> (order {}): on P {on_p}, on P/Phi {on_frattini_quotient}, strictly p-closed {closed}",
                a.order()
            ));
        }
    }
    outcome(failures)
}

/// Maps induced on `Q = G/N` by maps of `G` that preserve `N`.
fn induced_maps(g: &FiniteGroup, q: &FiniteGroup, proj: &GroupMap, maps: &MapSet) -> MapSet {
    let mut rep = vec![usize::MAX; q.order()];
    for x in g.elements().rev() {
        rep[proj.apply(x)] = x;
    }
    let induced = maps
        .maps
        .iter()
        .map(|f| {
            GroupMap::new(
                rep.iter().map(|&x| proj.apply(f.apply(x))).collect(),
                q.order(),
            )
        })
        .collect();
    MapSet::new(maps.kind, induced, false)
}
