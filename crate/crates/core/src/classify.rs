//! Predicates of the solvability hierarchy and the chain search behind the
//! ultrasolvable and fully solvable verdicts.
//!
//! Every `true` verdict carries a certificate that [`recheck`] validates
//! with table lookups, subgroup tests and map application only.

use std::cell::{OnceCell, RefCell};
use std::collections::VecDeque;

use fixedbitset::FixedBitSet;
use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith;
use crate::certificate::{self, CertificateError, ChainCertificate, InvarianceKind};
use crate::error::MorphismError;
use crate::group::{FiniteGroup, GroupConfig, SubgroupMask};
use crate::morphisms::{
    aut_as_group, enumerate_automorphisms, enumerate_endomorphisms, AutGroup, ExistenceOrbits,
    ListedMaps, MapKind, MapSet, OrbitSource, DEFAULT_AUT_CAP, DEFAULT_END_CAP,
};
use crate::structure::{
    chief_series, normal_hall, normal_subgroups, p_elements, AbelianInvariants, ChiefSeriesRecord,
    PrimeSet,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SkipReason {
    AutCapExceeded,
    EndCapExceeded,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Value {
    True,
    False,
    Skipped(SkipReason),
}

impl From<bool> for Value {
    fn from(b: bool) -> Self {
        if b {
            Value::True
        } else {
            Value::False
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Certificate {
    Chain(ChainCertificate),
    ChiefSeries(ChiefSeriesRecord),
    /// `G = D_0 > D_1 > ... > D_k = 1`.
    DerivedSeries(Vec<SubgroupMask>),
    NormalHall(SubgroupMask),
    StrictlyPClosed {
        p: usize,
        sylow: SubgroupMask,
    },
    /// Chief series of `Aut(G)` in the indexing of [`aut_as_group`].
    AutChiefSeries(ChiefSeriesRecord),
    /// `G = H x V` with `H` of odd order and `V` a central Klein four
    /// subgroup; `odd_chain` is a characteristic series of `H`, indexed as
    /// in [`FiniteGroup::subgroup_as_group`].
    Decomposition {
        odd: SubgroupMask,
        klein: SubgroupMask,
        odd_chain: ChainCertificate,
    },
}

impl Certificate {
    /// Every subgroup mask in the certificate, for mutation testing.
    pub fn masks_mut(&mut self) -> Vec<&mut SubgroupMask> {
        match self {
            Certificate::Chain(c) => c.steps.iter_mut().collect(),
            Certificate::ChiefSeries(r) | Certificate::AutChiefSeries(r) => {
                r.steps.iter_mut().collect()
            }
            Certificate::DerivedSeries(steps) => steps.iter_mut().collect(),
            Certificate::NormalHall(m) => vec![m],
            Certificate::StrictlyPClosed { sylow, .. } => vec![sylow],
            Certificate::Decomposition {
                odd,
                klein,
                odd_chain,
            } => {
                let mut v = vec![odd, klein];
                v.extend(odd_chain.steps.iter_mut());
                v
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub value: Value,
    pub certificate: Option<Certificate>,
}

impl Verdict {
    fn yes(cert: Certificate) -> Self {
        Verdict {
            value: Value::True,
            certificate: Some(cert),
        }
    }

    fn no() -> Self {
        Verdict {
            value: Value::False,
            certificate: None,
        }
    }

    fn skipped(reason: SkipReason) -> Self {
        Verdict {
            value: Value::Skipped(reason),
            certificate: None,
        }
    }

    /// `None` when skipped.
    pub fn truth(&self) -> Option<bool> {
        match self.value {
            Value::True => Some(true),
            Value::False => Some(false),
            Value::Skipped(_) => None,
        }
    }

    pub fn is_true(&self) -> bool {
        self.value == Value::True
    }

    pub fn is_skipped(&self) -> bool {
        matches!(self.value, Value::Skipped(_))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClassifyConfig {
    pub aut_cap: usize,
    pub end_cap: usize,
    /// When enumeration exceeds its cap, decide orbits by per-element
    /// existence searches instead of skipping.
    pub existence_fallback: bool,
    /// Require every chain step to be normal in `G`, not just in the next
    /// step.
    pub normal_in_group: bool,
}

impl Default for ClassifyConfig {
    fn default() -> Self {
        ClassifyConfig {
            aut_cap: DEFAULT_AUT_CAP,
            end_cap: DEFAULT_END_CAP,
            existence_fallback: true,
            normal_in_group: false,
        }
    }
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("direct-factor detectors disagree: shortcut {shortcut}, exhaustive {exhaustive}")]
    DetectorsDisagree { shortcut: bool, exhaustive: bool },
}

pub fn derived_series(g: &FiniteGroup) -> Vec<SubgroupMask> {
    let mut steps = vec![SubgroupMask::full(g.order())];
    loop {
        let last = steps.last().expect("nonempty");
        let next = g.derived_of(last);
        if next == *last {
            return steps;
        }
        steps.push(next);
    }
}

pub fn is_solvable(g: &FiniteGroup) -> Verdict {
    let steps = derived_series(g);
    if steps.last().expect("nonempty").is_trivial() {
        Verdict::yes(Certificate::DerivedSeries(steps))
    } else {
        Verdict::no()
    }
}

/// Supersolvable iff every chief factor has prime order.
pub fn is_supersolvable(g: &FiniteGroup) -> Verdict {
    let cs = chief_series(g);
    if cs.factor_orders.iter().all(|&k| arith::is_prime(k)) {
        Verdict::yes(Certificate::ChiefSeries(cs))
    } else {
        Verdict::no()
    }
}

/// A normal Hall subgroup for the primes `>= n`.
pub fn has_sylow_tower_tail(g: &FiniteGroup, n: usize) -> Verdict {
    match normal_hall(g, &PrimeSet::at_least(n)) {
        Some(h) => Verdict::yes(Certificate::NormalHall(h)),
        None => Verdict::no(),
    }
}

/// A normal 2-complement.
pub fn is_2_nilpotent(g: &FiniteGroup) -> Verdict {
    has_sylow_tower_tail(g, 3)
}

fn strictly_p_closed_by(g: &FiniteGroup, p: usize, sylow: &SubgroupMask) -> bool {
    g.is_normal(sylow)
        && sylow.popcount() == arith::p_part(g.order(), p)
        && g.derived_subgroup().is_subset(sylow)
        && g.elements().all(|x| sylow.contains(g.pow(x, p - 1)))
}

/// Normal Sylow `p`-subgroup `P` with `G/P` abelian of exponent dividing
/// `p - 1`.
pub fn is_strictly_p_closed(g: &FiniteGroup, p: usize) -> Verdict {
    assert!(arith::is_prime(p), "{p} is not prime");
    match normal_hall(g, &PrimeSet::single(p)) {
        Some(sylow) if strictly_p_closed_by(g, p, &sylow) => {
            Verdict::yes(Certificate::StrictlyPClosed { p, sylow })
        }
        _ => Verdict::no(),
    }
}

/// Breadth-first search for a series `1 = H_0 < ... < H_k = G` of subgroups
/// closed under `orbits`, each normal in the next with cyclic factor.
///
/// Only steps of prime index are taken: a cyclic invariant factor `K/H`
/// refines through the preimages of its subgroups, each the unique one of
/// its order and hence invariant. The successors of `H` are
/// `K = <H, orbit(x)>` for `x` outside `H`, kept when `K = <H, x>`, `|K : H|`
/// is prime and `H` is normal in `K`. This finds every admissible next
/// step: if `K/H` is generated by `xH` and `K` is invariant, then
/// `<H, x> <= <H, orbit(x)> <= K = <H, x>`.
pub fn find_chain(
    g: &FiniteGroup,
    orbits: &mut dyn OrbitSource,
    normal_in_group: bool,
) -> Option<ChainCertificate> {
    let n = g.order();
    let kind = orbits.kind();
    let start = SubgroupMask::identity(n);
    let mut parent: FxHashMap<SubgroupMask, Option<(SubgroupMask, usize)>> = FxHashMap::default();
    parent.insert(start.clone(), None);
    let mut queue = VecDeque::from([start]);
    while let Some(h) = queue.pop_front() {
        if h.is_full() {
            return Some(rebuild(&parent, h, kind));
        }
        let mut tried = FixedBitSet::with_capacity(n);
        for x in h.members() {
            tried.insert(x);
        }
        for x in g.elements() {
            if tried.contains(x) {
                continue;
            }
            let orbit = orbits.orbit(x);
            if kind == MapKind::Automorphisms {
                // Orbits partition G, so every y in orbit(x) gives the same K.
                for &y in &orbit {
                    tried.insert(y);
                }
            } else {
                tried.insert(x);
            }
            let cyclic_over = g.closure_with(&h, [x]);
            if !arith::is_prime(cyclic_over.popcount() / h.popcount()) {
                continue;
            }
            let k = g.closure_with(&cyclic_over, orbit);
            if k != cyclic_over || parent.contains_key(&k) || !g.is_normal_in(&h, &k) {
                continue;
            }
            if normal_in_group && !g.is_normal(&k) {
                continue;
            }
            parent.insert(k.clone(), Some((h.clone(), x)));
            queue.push_back(k);
        }
    }
    None
}

fn rebuild(
    parent: &FxHashMap<SubgroupMask, Option<(SubgroupMask, usize)>>,
    top: SubgroupMask,
    kind: MapKind,
) -> ChainCertificate {
    let mut steps = vec![top];
    let mut witnesses = Vec::new();
    while let Some(Some((below, x))) = parent.get(steps.last().expect("nonempty")) {
        witnesses.push(*x);
        steps.push(below.clone());
    }
    steps.reverse();
    witnesses.reverse();
    ChainCertificate {
        steps,
        cyclic_witness: witnesses,
        invariance_kind: kind.into(),
    }
}

/// `A`-solvability for the monoid generated by `maps`.
pub fn is_a_solvable(g: &FiniteGroup, maps: &MapSet) -> Verdict {
    is_a_solvable_with(g, maps, false)
}

pub fn is_a_solvable_with(g: &FiniteGroup, maps: &MapSet, normal_in_group: bool) -> Verdict {
    match find_chain(g, &mut ListedMaps::new(maps), normal_in_group) {
        Some(c) => Verdict::yes(Certificate::Chain(c)),
        None => Verdict::no(),
    }
}

fn invariant_chain(g: &FiniteGroup, kind: MapKind, cfg: &ClassifyConfig) -> Verdict {
    let listed = match kind {
        MapKind::Automorphisms => enumerate_automorphisms(g, cfg.aut_cap),
        MapKind::Endomorphisms => enumerate_endomorphisms(g, cfg.end_cap),
    };
    let found = match listed {
        Ok(maps) => find_chain(g, &mut ListedMaps::new(&maps), cfg.normal_in_group),
        Err(e) if !cfg.existence_fallback => return Verdict::skipped(skip_reason(&e)),
        Err(_) => find_chain(g, &mut ExistenceOrbits::new(g, kind), cfg.normal_in_group),
    };
    match found {
        Some(c) => Verdict::yes(Certificate::Chain(c)),
        None => Verdict::no(),
    }
}

fn skip_reason(e: &MorphismError) -> SkipReason {
    match e {
        MorphismError::EndCapExceeded(_) => SkipReason::EndCapExceeded,
        _ => SkipReason::AutCapExceeded,
    }
}

/// A characteristic series with cyclic factors.
pub fn is_ultrasolvable(g: &FiniteGroup) -> Verdict {
    is_ultrasolvable_with(g, &ClassifyConfig::default())
}

pub fn is_ultrasolvable_with(g: &FiniteGroup, cfg: &ClassifyConfig) -> Verdict {
    invariant_chain(g, MapKind::Automorphisms, cfg)
}

/// A fully invariant series with cyclic factors.
pub fn is_fully_solvable(g: &FiniteGroup) -> Verdict {
    is_fully_solvable_with(g, &ClassifyConfig::default())
}

pub fn is_fully_solvable_with(g: &FiniteGroup, cfg: &ClassifyConfig) -> Verdict {
    invariant_chain(g, MapKind::Endomorphisms, cfg)
}

/// `Aut(G)` supersolvable for abelian `G`, read off the invariants: at each
/// prime the exponents are strictly increasing, or the component is
/// `C2 x C2`.
pub fn abelian_aut_supersolvable_rule(inv: &AbelianInvariants) -> bool {
    inv.0
        .iter()
        .all(|(&p, exps)| exps.windows(2).all(|w| w[0] < w[1]) || (p == 2 && exps[..] == [1, 1]))
}

/// `G = H x V` with `H` the odd-order elements and `V` the 2-elements, read
/// off element orders: the 2-part of `|G|` is 4, the odd-order elements
/// form a subgroup, and the 2-elements form a central Klein four group.
pub fn odd_by_klein_shortcut(g: &FiniteGroup) -> Option<(SubgroupMask, SubgroupMask)> {
    let n = g.order();
    if arith::p_part(n, 2) != 4 {
        return None;
    }
    let odd = SubgroupMask::from_elements(n, g.elements().filter(|&x| g.element_order(x) % 2 == 1));
    if odd.popcount() != n / 4 || !g.is_subgroup(&odd) {
        return None;
    }
    let klein = p_elements(g, 2);
    let center = g.center();
    let ok = klein.popcount() == 4
        && klein.is_subset(&center)
        && klein.members().all(|x| g.element_order(x) <= 2);
    ok.then_some((odd, klein))
}

/// The same decomposition found by trying every pair of normal subgroups.
pub fn odd_by_klein_exhaustive(g: &FiniteGroup) -> Option<(SubgroupMask, SubgroupMask)> {
    let n = g.order();
    if n % 4 != 0 || (n / 4) % 2 == 0 {
        return None;
    }
    let normals = normal_subgroups(g);
    let kleins = normals
        .iter()
        .filter(|v| v.popcount() == 4 && v.members().all(|x| g.element_order(x) <= 2));
    for v in kleins {
        for h in normals.iter().filter(|h| h.popcount() == n / 4) {
            let commute = h
                .members()
                .all(|a| v.members().all(|b| g.mul(a, b) == g.mul(b, a)));
            if h.intersection(v).is_trivial() && commute {
                return Some((h.clone(), v.clone()));
            }
        }
    }
    None
}

/// Orders up to which the exhaustive detector is run alongside the shortcut.
pub const EXHAUSTIVE_DETECTOR_LIMIT: usize = 200;

/// `G` ultrasolvable, or `G = H x C2 x C2` with `H` ultrasolvable of odd
/// order.
pub fn condition2(g: &FiniteGroup, cfg: &ClassifyConfig) -> Result<Verdict, ClassifyError> {
    let ultra = is_ultrasolvable_with(g, cfg);
    if ultra.is_true() {
        return Ok(ultra);
    }
    let shortcut = odd_by_klein_shortcut(g);
    if g.order() <= EXHAUSTIVE_DETECTOR_LIMIT {
        let exhaustive = odd_by_klein_exhaustive(g);
        if shortcut.is_some() != exhaustive.is_some()
            || shortcut.as_ref().map(|s| &s.0) != exhaustive.as_ref().map(|s| &s.0)
        {
            return Err(ClassifyError::DetectorsDisagree {
                shortcut: shortcut.is_some(),
                exhaustive: exhaustive.is_some(),
            });
        }
    }
    let Some((odd, klein)) = shortcut else {
        return Ok(ultra);
    };
    let (h, _) = g
        .subgroup_as_group(&odd, &GroupConfig::default())
        .expect("odd-order elements form a subgroup");
    let inner = is_ultrasolvable_with(&h, cfg);
    Ok(match (inner.value, inner.certificate) {
        (Value::True, Some(Certificate::Chain(odd_chain))) => {
            Verdict::yes(Certificate::Decomposition {
                odd,
                klein,
                odd_chain,
            })
        }
        (Value::Skipped(r), _) => Verdict::skipped(r),
        _ => ultra,
    })
}

/// `Aut(G)` supersolvable, from a complete automorphism list.
pub fn aut_supersolvable_from(g: &FiniteGroup, autos: &MapSet) -> Verdict {
    let aut = aut_as_group(g, autos).expect("complete automorphism set");
    match is_supersolvable(&aut.group) {
        Verdict {
            value: Value::True,
            certificate: Some(Certificate::ChiefSeries(cs)),
        } => Verdict::yes(Certificate::AutChiefSeries(cs)),
        _ => Verdict::no(),
    }
}

pub fn aut_supersolvable(g: &FiniteGroup, aut_cap: usize) -> Verdict {
    match enumerate_automorphisms(g, aut_cap) {
        Ok(autos) => aut_supersolvable_from(g, &autos),
        Err(_) => Verdict::skipped(SkipReason::AutCapExceeded),
    }
}

/// Predicates with checkable certificates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Predicate {
    Solvable,
    Supersolvable,
    SylowTowerTail(usize),
    StrictlyPClosed(usize),
    Ultrasolvable,
    FullySolvable,
    AutSupersolvable,
    Condition2,
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum AuditError {
    #[error("true verdict without a certificate")]
    Missing,
    #[error("certificate of the wrong shape for {0:?}")]
    WrongShape(Predicate),
    #[error(transparent)]
    Invalid(#[from] CertificateError),
    #[error("acting map set could not be rebuilt: {0}")]
    Maps(#[from] MorphismError),
}

/// Acting map sets for certificate checks, rebuilt once per group and
/// shared by every check against it.
pub struct CheckContext<'g> {
    g: &'g FiniteGroup,
    cfg: ClassifyConfig,
    autos: OnceCell<Result<MapSet, MorphismError>>,
    endos: OnceCell<Result<MapSet, MorphismError>>,
    aut_group: OnceCell<Result<AutGroup, MorphismError>>,
    aut_orbits: RefCell<Option<ExistenceOrbits<'g>>>,
    end_orbits: RefCell<Option<ExistenceOrbits<'g>>>,
}

impl<'g> CheckContext<'g> {
    pub fn new(g: &'g FiniteGroup, cfg: &ClassifyConfig) -> Self {
        CheckContext {
            g,
            cfg: *cfg,
            autos: OnceCell::new(),
            endos: OnceCell::new(),
            aut_group: OnceCell::new(),
            aut_orbits: RefCell::new(None),
            end_orbits: RefCell::new(None),
        }
    }

    fn listed(&self, kind: MapKind) -> &Result<MapSet, MorphismError> {
        match kind {
            MapKind::Automorphisms => self
                .autos
                .get_or_init(|| enumerate_automorphisms(self.g, self.cfg.aut_cap)),
            MapKind::Endomorphisms => self
                .endos
                .get_or_init(|| enumerate_endomorphisms(self.g, self.cfg.end_cap)),
        }
    }

    fn aut_group(&self) -> Result<&AutGroup, AuditError> {
        let built = self.aut_group.get_or_init(|| {
            let autos = self.listed(MapKind::Automorphisms).clone()?;
            aut_as_group(self.g, &autos)
        });
        built.as_ref().map_err(|e| AuditError::Maps(e.clone()))
    }

    /// Re-validates the certificate of a `true` verdict.
    pub fn recheck(&self, pred: Predicate, verdict: &Verdict) -> Result<(), AuditError> {
        if !verdict.is_true() {
            return Ok(());
        }
        let cert = verdict.certificate.as_ref().ok_or(AuditError::Missing)?;
        self.check(pred, cert)
    }

    pub fn check(&self, pred: Predicate, cert: &Certificate) -> Result<(), AuditError> {
        let g = self.g;
        let invalid = || AuditError::Invalid(CertificateError::NotNormal(0));
        match (pred, cert) {
            (Predicate::Solvable, Certificate::DerivedSeries(steps)) => {
                Ok(certificate::check_derived_series(g, steps)?)
            }
            (Predicate::Supersolvable, Certificate::ChiefSeries(cs)) => {
                Ok(certificate::check_normal_series(g, &cs.steps, true)?)
            }
            (Predicate::SylowTowerTail(k), Certificate::NormalHall(h)) => {
                let pi = PrimeSet::at_least(k);
                let ok = h.parent_order() == g.order()
                    && g.is_subgroup(h)
                    && g.is_normal(h)
                    && h.popcount() == pi.part_of(g.order());
                ok.then_some(()).ok_or_else(invalid)
            }
            (Predicate::StrictlyPClosed(p), Certificate::StrictlyPClosed { p: q, sylow })
                if p == *q =>
            {
                let ok = sylow.parent_order() == g.order()
                    && g.is_subgroup(sylow)
                    && strictly_p_closed_by(g, p, sylow);
                ok.then_some(()).ok_or_else(invalid)
            }
            (Predicate::Ultrasolvable | Predicate::Condition2, Certificate::Chain(c)) => {
                self.check_chain(c, MapKind::Automorphisms)
            }
            (Predicate::FullySolvable, Certificate::Chain(c)) => {
                self.check_chain(c, MapKind::Endomorphisms)
            }
            (
                Predicate::Condition2,
                Certificate::Decomposition {
                    odd,
                    klein,
                    odd_chain,
                },
            ) => {
                let n = g.order();
                let shape = odd.parent_order() == n
                    && klein.parent_order() == n
                    && g.is_subgroup(odd)
                    && g.is_subgroup(klein)
                    && g.is_normal(odd)
                    && odd.popcount() % 2 == 1
                    && klein.popcount() == 4
                    && klein.members().all(|x| g.element_order(x) <= 2)
                    && klein.is_subset(&g.center())
                    && odd.intersection(klein).is_trivial()
                    && odd.popcount() * 4 == n;
                if !shape {
                    return Err(invalid());
                }
                let (h, _) = g
                    .subgroup_as_group(odd, &GroupConfig::default())
                    .map_err(|_| invalid())?;
                CheckContext::new(&h, &self.cfg).check_chain(odd_chain, MapKind::Automorphisms)
            }
            (Predicate::AutSupersolvable, Certificate::AutChiefSeries(cs)) => {
                let aut = self.aut_group()?;
                Ok(certificate::check_normal_series(
                    &aut.group, &cs.steps, true,
                )?)
            }
            _ => Err(AuditError::WrongShape(pred)),
        }
    }

    fn check_chain(&self, c: &ChainCertificate, kind: MapKind) -> Result<(), AuditError> {
        let expected = InvarianceKind::from(kind);
        if c.invariance_kind != expected {
            return Err(AuditError::Invalid(CertificateError::MissingMaps(expected)));
        }
        // Cheap structural checks first, so corrupted series never pay for
        // rebuilding the maps.
        certificate::check_chain(
            self.g,
            &ChainCertificate {
                invariance_kind: InvarianceKind::None,
                ..c.clone()
            },
            None,
            self.cfg.normal_in_group,
        )?;
        match self.listed(kind) {
            Ok(maps) => Ok(certificate::check_chain(
                self.g,
                c,
                Some(maps),
                self.cfg.normal_in_group,
            )?),
            Err(_) if self.cfg.existence_fallback => {
                let cell = match kind {
                    MapKind::Automorphisms => &self.aut_orbits,
                    MapKind::Endomorphisms => &self.end_orbits,
                };
                let mut slot = cell.borrow_mut();
                let orbits = slot.get_or_insert_with(|| ExistenceOrbits::new(self.g, kind));
                Ok(certificate::check_chain_orbits(
                    self.g,
                    c,
                    orbits,
                    self.cfg.normal_in_group,
                )?)
            }
            Err(e) => Err(e.clone().into()),
        }
    }
}

/// One-off form of [`CheckContext::recheck`]. Map sets are rebuilt (listed
/// when within the caps, otherwise as existence orbits); no series is
/// searched for.
pub fn recheck(
    g: &FiniteGroup,
    pred: Predicate,
    verdict: &Verdict,
    cfg: &ClassifyConfig,
) -> Result<(), AuditError> {
    CheckContext::new(g, cfg).recheck(pred, verdict)
}

pub fn check_certificate(
    g: &FiniteGroup,
    pred: Predicate,
    cert: &Certificate,
    cfg: &ClassifyConfig,
) -> Result<(), AuditError> {
    CheckContext::new(g, cfg).check(pred, cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{
        abelian_of_type, cyclic, dihedral, direct_product, elementary_abelian, from_generators,
        klein_four, quaternion8, PermSpec,
    };
    use crate::morphisms::inner_automorphisms;
    use crate::structure::abelian_invariants;

    fn perm(spec: PermSpec) -> FiniteGroup {
        from_generators(&spec, 1000, &GroupConfig::default()).unwrap()
    }

    fn c6c2() -> FiniteGroup {
        direct_product(&cyclic(6).unwrap(), &cyclic(2).unwrap()).unwrap()
    }

    fn cfg() -> ClassifyConfig {
        ClassifyConfig::default()
    }

    fn audit(g: &FiniteGroup, pred: Predicate, v: &Verdict) {
        recheck(g, pred, v, &cfg()).unwrap();
    }

    #[test]
    fn solvable_examples() {
        assert!(is_solvable(&cyclic(9).unwrap()).is_true());
        let s3 = perm(PermSpec::symmetric(3));
        let v = is_solvable(&s3);
        assert!(v.is_true());
        audit(&s3, Predicate::Solvable, &v);
        assert_eq!(
            is_solvable(&perm(PermSpec::alternating(5))).value,
            Value::False
        );
    }

    #[test]
    fn supersolvable_examples() {
        let d8 = dihedral(4).unwrap();
        let v = is_supersolvable(&d8);
        assert!(v.is_true());
        audit(&d8, Predicate::Supersolvable, &v);
        assert_eq!(
            is_supersolvable(&perm(PermSpec::alternating(4))).value,
            Value::False
        );
        let e = abelian_of_type(&[3, 3]).unwrap();
        let autos = enumerate_automorphisms(&e, 1000).unwrap();
        assert_eq!(autos.len(), 48);
        let gl23 = aut_as_group(&e, &autos).unwrap();
        assert_eq!(is_supersolvable(&gl23.group).value, Value::False);
    }

    #[test]
    fn hall_predicates() {
        let s3 = perm(PermSpec::symmetric(3));
        let v = is_2_nilpotent(&s3);
        assert!(v.is_true());
        audit(&s3, Predicate::SylowTowerTail(3), &v);
        assert!(is_2_nilpotent(&cyclic(15).unwrap()).is_true());
        assert_eq!(
            is_2_nilpotent(&perm(PermSpec::symmetric(4))).value,
            Value::False
        );
    }

    #[test]
    fn strictly_p_closed_examples() {
        let s3 = perm(PermSpec::symmetric(3));
        let v = is_strictly_p_closed(&s3, 3);
        assert!(v.is_true());
        audit(&s3, Predicate::StrictlyPClosed(3), &v);
        assert_eq!(is_strictly_p_closed(&s3, 2).value, Value::False);
        assert!(is_strictly_p_closed(&quaternion8(), 2).is_true());
        assert!(is_strictly_p_closed(&elementary_abelian(3, 2).unwrap(), 3).is_true());
        // C7 x| C3 is 7-closed with quotient of exponent 3 dividing 6.
        let f21 = perm(PermSpec::new(
            7,
            vec![vec![1, 2, 3, 4, 5, 6, 0], vec![0, 2, 4, 6, 1, 3, 5]],
        ));
        assert_eq!(f21.order(), 21);
        assert!(is_strictly_p_closed(&f21, 7).is_true());
        assert_eq!(is_strictly_p_closed(&f21, 3).value, Value::False);
    }

    #[test]
    fn a_solvable_examples() {
        let s4 = perm(PermSpec::symmetric(4));
        let v = is_a_solvable(&s4, &MapSet::identity(24));
        assert!(v.is_true());
        let v = is_a_solvable(
            &klein_four(),
            &enumerate_automorphisms(&klein_four(), 100).unwrap(),
        );
        assert_eq!(v.value, Value::False);
        let d8 = dihedral(4).unwrap();
        let autos = enumerate_automorphisms(&d8, 100).unwrap();
        let v = is_a_solvable(&d8, &autos);
        let Some(Certificate::Chain(c)) = &v.certificate else {
            panic!("no chain")
        };
        assert_eq!(c.factor_orders(), vec![2, 2, 2]);
        certificate::check_chain(&d8, c, Some(&autos), false).unwrap();
    }

    #[test]
    fn inner_solvability_is_supersolvability() {
        let groups = [
            perm(PermSpec::symmetric(4)),
            perm(PermSpec::alternating(4)),
            perm(PermSpec::symmetric(3)),
            dihedral(6).unwrap(),
            quaternion8(),
            elementary_abelian(2, 3).unwrap(),
        ];
        for g in &groups {
            let inn = inner_automorphisms(g);
            assert_eq!(is_a_solvable(g, &inn).value, is_supersolvable(g).value);
        }
    }

    #[test]
    fn ultrasolvable_examples() {
        for n in [1, 2, 7, 12] {
            let g = cyclic(n).unwrap();
            let v = is_ultrasolvable(&g);
            assert!(v.is_true());
            audit(&g, Predicate::Ultrasolvable, &v);
        }
        assert_eq!(is_ultrasolvable(&c6c2()).value, Value::False);
        assert_eq!(is_ultrasolvable(&quaternion8()).value, Value::False);
        assert_eq!(is_ultrasolvable(&klein_four()).value, Value::False);
        let d8 = dihedral(4).unwrap();
        let v = is_ultrasolvable(&d8);
        assert!(v.is_true());
        audit(&d8, Predicate::Ultrasolvable, &v);
    }

    #[test]
    fn existence_fallback_matches_listing() {
        let tiny = ClassifyConfig {
            aut_cap: 1,
            end_cap: 1,
            ..cfg()
        };
        let skipping = ClassifyConfig {
            existence_fallback: false,
            ..tiny
        };
        for g in [
            dihedral(4).unwrap(),
            quaternion8(),
            c6c2(),
            abelian_of_type(&[2, 4]).unwrap(),
            perm(PermSpec::symmetric(4)),
        ] {
            let a = is_ultrasolvable(&g);
            let b = is_ultrasolvable_with(&g, &tiny);
            assert_eq!(a.value, b.value);
            recheck(&g, Predicate::Ultrasolvable, &b, &tiny).unwrap();
            assert_eq!(
                is_ultrasolvable_with(&g, &skipping).value,
                Value::Skipped(SkipReason::AutCapExceeded)
            );
            let a = is_fully_solvable(&g);
            let b = is_fully_solvable_with(&g, &tiny);
            assert_eq!(a.value, b.value);
            recheck(&g, Predicate::FullySolvable, &b, &tiny).unwrap();
        }
    }

    #[test]
    fn fully_solvable_examples() {
        let g = cyclic(12).unwrap();
        let v = is_fully_solvable(&g);
        assert!(v.is_true());
        audit(&g, Predicate::FullySolvable, &v);
        assert_eq!(is_fully_solvable(&dihedral(4).unwrap()).value, Value::False);
        let g = abelian_of_type(&[2, 4]).unwrap();
        let v = is_fully_solvable(&g);
        assert!(v.is_true());
        audit(&g, Predicate::FullySolvable, &v);
    }

    #[test]
    fn abelian_rule_examples() {
        let rule = |pairs: &[(usize, &[u32])]| {
            abelian_aut_supersolvable_rule(&AbelianInvariants(
                pairs.iter().map(|&(p, e)| (p, e.to_vec())).collect(),
            ))
        };
        assert!(rule(&[(5, &[1])]));
        assert!(rule(&[(2, &[1, 1])]));
        assert!(!rule(&[(3, &[1, 1])]));
        assert!(rule(&[(2, &[1, 1]), (3, &[1])]));
        assert!(!rule(&[(2, &[1, 1, 1])]));
        assert!(rule(&[(2, &[1, 2])]));
    }

    #[test]
    fn condition2_examples() {
        let v = condition2(&klein_four(), &cfg()).unwrap();
        assert!(v.is_true());
        audit(&klein_four(), Predicate::Condition2, &v);
        let c3v = direct_product(&cyclic(3).unwrap(), &klein_four()).unwrap();
        assert!(condition2(&c3v, &cfg()).unwrap().is_true());
        let v = condition2(&c6c2(), &cfg()).unwrap();
        assert!(matches!(
            v.certificate,
            Some(Certificate::Decomposition { .. })
        ));
        audit(&c6c2(), Predicate::Condition2, &v);
        assert_eq!(
            condition2(&quaternion8(), &cfg()).unwrap().value,
            Value::False
        );
        assert_eq!(
            condition2(&elementary_abelian(2, 3).unwrap(), &cfg())
                .unwrap()
                .value,
            Value::False
        );
        // A4 x C2 x C2? Not of the form: H = A4 has even order.
        let s3v = direct_product(&perm(PermSpec::symmetric(3)), &klein_four()).unwrap();
        assert_eq!(odd_by_klein_shortcut(&s3v), None);
        assert_eq!(odd_by_klein_exhaustive(&s3v), None);
    }

    #[test]
    fn aut_supersolvable_examples() {
        let g = cyclic(7).unwrap();
        let v = aut_supersolvable(&g, DEFAULT_AUT_CAP);
        assert!(v.is_true());
        audit(&g, Predicate::AutSupersolvable, &v);
        assert!(aut_supersolvable(&klein_four(), DEFAULT_AUT_CAP).is_true());
        assert!(aut_supersolvable(&c6c2(), DEFAULT_AUT_CAP).is_true());
        assert_eq!(
            aut_supersolvable(&elementary_abelian(2, 3).unwrap(), DEFAULT_AUT_CAP).value,
            Value::False
        );
        assert_eq!(
            aut_supersolvable(&quaternion8(), DEFAULT_AUT_CAP).value,
            Value::False
        );
        assert_eq!(
            aut_supersolvable(&elementary_abelian(2, 5).unwrap(), DEFAULT_AUT_CAP).value,
            Value::Skipped(SkipReason::AutCapExceeded)
        );
    }

    #[test]
    fn abelian_rule_matches_aut() {
        for t in [
            &[2, 2][..],
            &[4, 2],
            &[3, 3],
            &[9, 3],
            &[2, 2, 3],
            &[8],
            &[2, 2, 2],
            &[5, 5],
        ] {
            let g = abelian_of_type(t).unwrap();
            let rule = abelian_aut_supersolvable_rule(&abelian_invariants(&g).unwrap());
            assert_eq!(
                Some(rule),
                aut_supersolvable(&g, DEFAULT_AUT_CAP).truth(),
                "type {t:?}"
            );
            assert_eq!(
                is_ultrasolvable(&g).value,
                is_fully_solvable(&g).value,
                "type {t:?}"
            );
        }
    }

    #[test]
    fn corrupted_masks_are_rejected() {
        let d8 = dihedral(4).unwrap();
        let v = is_ultrasolvable(&d8);
        let cert = v.certificate.clone().unwrap();
        let count = cert.clone().masks_mut().len();
        for i in 0..count {
            for x in 0..d8.order() {
                let mut bad = cert.clone();
                bad.masks_mut()[i].toggle(x);
                assert!(check_certificate(&d8, Predicate::Ultrasolvable, &bad, &cfg()).is_err());
            }
        }
    }
}
