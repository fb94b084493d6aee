//! Witness series and their re-checking.
//!
//! The checkers here only use table lookups, subgroup tests and map
//! application from [`crate::group`]; they never call the searches that
//! produced the certificates.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::group::{FiniteGroup, SubgroupMask};
use crate::morphisms::{MapKind, MapSet, OrbitSource};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InvarianceKind {
    AutomorphismSet,
    EndomorphismSet,
    None,
}

impl From<MapKind> for InvarianceKind {
    fn from(kind: MapKind) -> Self {
        match kind {
            MapKind::Automorphisms => InvarianceKind::AutomorphismSet,
            MapKind::Endomorphisms => InvarianceKind::EndomorphismSet,
        }
    }
}

/// A series `1 = H_0 < H_1 < ... < H_k = G` with `H_{i-1}` normal in `H_i`,
/// cyclic factors, and every step invariant under an acting map set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainCertificate {
    pub steps: Vec<SubgroupMask>,
    /// `cyclic_witness[i]` generates `H_{i+1} / H_i`.
    pub cyclic_witness: Vec<usize>,
    pub invariance_kind: InvarianceKind,
}

impl ChainCertificate {
    pub fn factor_orders(&self) -> Vec<usize> {
        self.steps
            .windows(2)
            .map(|w| w[1].popcount() / w[0].popcount())
            .collect()
    }
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum CertificateError {
    #[error("series is empty")]
    Empty,
    #[error("series does not start at the trivial subgroup")]
    BadStart,
    #[error("series does not end at the whole group")]
    BadEnd,
    #[error("step {0} has the wrong parent order")]
    WrongParent(usize),
    #[error("step {0} is not a subgroup")]
    NotSubgroup(usize),
    #[error("step {0} does not strictly contain the previous step")]
    NotIncreasing(usize),
    #[error("step {0} is not normal in the next step")]
    NotSubnormal(usize),
    #[error("step {0} is not normal in the group")]
    NotNormal(usize),
    #[error("factor above step {0} is not generated by its witness")]
    BadWitness(usize),
    #[error("factor above step {0} does not have prime order")]
    NotPrimeFactor(usize),
    #[error("factor above step {0} is not abelian")]
    NotAbelianFactor(usize),
    /// `map` is the index of the offending map, or for orbit checks the
    /// element whose orbit leaves the step.
    #[error("step {step} is not invariant (offender {map})")]
    NotInvariant { step: usize, map: usize },
    #[error("certificate needs a map set of kind {0:?}")]
    MissingMaps(InvarianceKind),
    #[error("expected {expected} witnesses, found {found}")]
    WitnessCount { expected: usize, found: usize },
}

fn check_ascending(g: &FiniteGroup, steps: &[SubgroupMask]) -> Result<(), CertificateError> {
    let first = steps.first().ok_or(CertificateError::Empty)?;
    let n = g.order();
    for (i, s) in steps.iter().enumerate() {
        if s.parent_order() != n {
            return Err(CertificateError::WrongParent(i));
        }
        if !g.is_subgroup(s) {
            return Err(CertificateError::NotSubgroup(i));
        }
    }
    if !first.is_trivial() {
        return Err(CertificateError::BadStart);
    }
    if !steps.last().expect("nonempty").is_full() {
        return Err(CertificateError::BadEnd);
    }
    for (i, w) in steps.windows(2).enumerate() {
        if !w[0].is_subset(&w[1]) || w[0].popcount() == w[1].popcount() {
            return Err(CertificateError::NotIncreasing(i + 1));
        }
    }
    Ok(())
}

/// Re-validates a chain certificate. `maps` must be supplied when the
/// certificate claims invariance; with `normal_in_group` every step must
/// also be normal in `G`.
pub fn check_chain(
    g: &FiniteGroup,
    cert: &ChainCertificate,
    maps: Option<&MapSet>,
    normal_in_group: bool,
) -> Result<(), CertificateError> {
    check_chain_shape(g, cert, normal_in_group)?;
    if cert.invariance_kind != InvarianceKind::None {
        let maps = maps.ok_or(CertificateError::MissingMaps(cert.invariance_kind))?;
        if InvarianceKind::from(maps.kind) != cert.invariance_kind {
            return Err(CertificateError::MissingMaps(cert.invariance_kind));
        }
        for (i, s) in cert.steps.iter().enumerate() {
            if let Some(j) = maps.maps.iter().position(|m| !m.maps_into(s)) {
                return Err(CertificateError::NotInvariant { step: i, map: j });
            }
        }
    }
    Ok(())
}

/// Like [`check_chain`], but invariance is tested against orbits handed out
/// by `orbits`: every step must contain the orbit of each of its elements.
pub fn check_chain_orbits(
    g: &FiniteGroup,
    cert: &ChainCertificate,
    orbits: &mut dyn OrbitSource,
    normal_in_group: bool,
) -> Result<(), CertificateError> {
    check_chain_shape(g, cert, normal_in_group)?;
    if InvarianceKind::from(orbits.kind()) != cert.invariance_kind {
        return Err(CertificateError::MissingMaps(cert.invariance_kind));
    }
    for (i, s) in cert.steps.iter().enumerate() {
        for x in s.members() {
            if orbits.orbit(x).into_iter().any(|y| !s.contains(y)) {
                return Err(CertificateError::NotInvariant { step: i, map: x });
            }
        }
    }
    Ok(())
}

fn check_chain_shape(
    g: &FiniteGroup,
    cert: &ChainCertificate,
    normal_in_group: bool,
) -> Result<(), CertificateError> {
    let steps = &cert.steps;
    check_ascending(g, steps)?;
    if cert.cyclic_witness.len() + 1 != steps.len() {
        return Err(CertificateError::WitnessCount {
            expected: steps.len() - 1,
            found: cert.cyclic_witness.len(),
        });
    }
    for (i, w) in steps.windows(2).enumerate() {
        let (lower, upper) = (&w[0], &w[1]);
        if !g.is_normal_in(lower, upper) {
            return Err(CertificateError::NotSubnormal(i));
        }
        let x = cert.cyclic_witness[i];
        if x >= g.order() || !upper.contains(x) {
            return Err(CertificateError::BadWitness(i));
        }
        // Union of the cosets x^k H_{i} must be H_{i+1}.
        let mut covered = lower.clone();
        let mut power = x;
        while !lower.contains(power) {
            for h in lower.members() {
                covered.insert(g.mul(power, h));
            }
            power = g.mul(power, x);
        }
        if covered != *upper {
            return Err(CertificateError::BadWitness(i));
        }
    }
    if normal_in_group {
        for (i, s) in steps.iter().enumerate() {
            if !g.is_normal(s) {
                return Err(CertificateError::NotNormal(i));
            }
        }
    }
    Ok(())
}

/// Checks an ascending series of subgroups normal in `G`; with
/// `prime_factors` every factor must have prime order.
pub fn check_normal_series(
    g: &FiniteGroup,
    steps: &[SubgroupMask],
    prime_factors: bool,
) -> Result<(), CertificateError> {
    check_ascending(g, steps)?;
    for (i, s) in steps.iter().enumerate() {
        if !g.is_normal(s) {
            return Err(CertificateError::NotNormal(i));
        }
    }
    if prime_factors {
        for (i, w) in steps.windows(2).enumerate() {
            if !crate::arith::is_prime(w[1].popcount() / w[0].popcount()) {
                return Err(CertificateError::NotPrimeFactor(i));
            }
        }
    }
    Ok(())
}

/// Checks a descending series `G = D_0 > D_1 > ... > D_k = 1` where each
/// `D_{i+1}` is normal in `D_i` with abelian quotient.
pub fn check_derived_series(
    g: &FiniteGroup,
    steps: &[SubgroupMask],
) -> Result<(), CertificateError> {
    let mut ascending = steps.to_vec();
    ascending.reverse();
    check_ascending(g, &ascending)?;
    for (i, w) in steps.windows(2).enumerate() {
        let (upper, lower) = (&w[0], &w[1]);
        if !g.is_normal_in(lower, upper) {
            return Err(CertificateError::NotSubnormal(i));
        }
        let abelian = upper
            .members()
            .all(|a| upper.members().all(|b| lower.contains(g.commutator(a, b))));
        if !abelian {
            return Err(CertificateError::NotAbelianFactor(i));
        }
    }
    Ok(())
}
