//! Normal structure: closures, minimal normal subgroups, chief series,
//! `O_pi` operators, Hall and Sylow detection, Frattini and `Omega`
//! subgroups, abelian invariants.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rustc_hash::FxHashSet;

use crate::arith;
use crate::certificate::{ChainCertificate, InvarianceKind};
use crate::error::StructureError;
use crate::group::{join, quotient, FiniteGroup, GroupConfig, SubgroupMask};
use crate::morphisms::MapSet;

/// A set of primes, either listed or given by its complement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PrimeSet {
    Only(Vec<usize>),
    AllBut(Vec<usize>),
}

impl PrimeSet {
    pub fn single(p: usize) -> Self {
        PrimeSet::Only(vec![p])
    }

    /// `p'`: every prime except `p`.
    pub fn complement_of(p: usize) -> Self {
        PrimeSet::AllBut(vec![p])
    }

    pub fn all() -> Self {
        PrimeSet::AllBut(vec![])
    }

    /// Primes `>= n`.
    pub fn at_least(n: usize) -> Self {
        PrimeSet::AllBut((2..n).filter(|&p| arith::is_prime(p)).collect())
    }

    pub fn contains(&self, p: usize) -> bool {
        match self {
            PrimeSet::Only(ps) => ps.contains(&p),
            PrimeSet::AllBut(ps) => !ps.contains(&p),
        }
    }

    /// Whether every prime factor of `n` lies in the set.
    pub fn admits(&self, n: usize) -> bool {
        arith::prime_divisors(n)
            .into_iter()
            .all(|p| self.contains(p))
    }

    pub fn part_of(&self, n: usize) -> usize {
        arith::pi_part(n, |p| self.contains(p))
    }
}

/// Least normal subgroup containing `seed`.
pub fn normal_closure(g: &FiniteGroup, seed: impl IntoIterator<Item = usize>) -> SubgroupMask {
    let mut n = SubgroupMask::identity(g.order());
    for x in seed {
        if n.contains(x) {
            continue;
        }
        let class = g.class_of(x).to_vec();
        n = g.closure_with(&n, class);
        // Closing under products can pull in new classes.
        loop {
            let missing: Vec<usize> = n
                .members()
                .flat_map(|y| g.class_of(y).iter().copied())
                .filter(|&z| !n.contains(z))
                .collect();
            if missing.is_empty() {
                break;
            }
            n = g.closure_with(&n, missing);
        }
    }
    n
}

/// Normal closures of the conjugacy classes, deduplicated and sorted.
fn class_closures(g: &FiniteGroup) -> Vec<SubgroupMask> {
    let mut seen = FxHashSet::default();
    let mut out = Vec::new();
    for class in g.conjugacy_classes().iter().skip(1) {
        let n = normal_closure(g, [class[0]]);
        if seen.insert(n.clone()) {
            out.push(n);
        }
    }
    out.sort();
    out
}

/// All minimal normal subgroups, in mask order.
pub fn minimal_normal_subgroups(g: &FiniteGroup) -> Result<Vec<SubgroupMask>, StructureError> {
    if g.order() == 1 {
        return Err(StructureError::TrivialGroup);
    }
    let closures = class_closures(g);
    Ok(closures
        .iter()
        .filter(|n| !closures.iter().any(|m| m != *n && m.is_subset(n)))
        .cloned()
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct ChiefSeriesRecord {
    pub steps: Vec<SubgroupMask>,
    pub factor_orders: Vec<usize>,
}

/// How the chief series picks among minimal normal subgroups of each quotient.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChiefChoice {
    /// Least `(popcount, members)`.
    Least,
    /// Uniformly random with a fixed seed; used to test Jordan-Hölder.
    Seeded(u64),
}

pub fn chief_series(g: &FiniteGroup) -> ChiefSeriesRecord {
    chief_series_with(g, ChiefChoice::Least)
}

pub fn chief_series_with(g: &FiniteGroup, choice: ChiefChoice) -> ChiefSeriesRecord {
    let mut rng = match choice {
        ChiefChoice::Seeded(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        ChiefChoice::Least => None,
    };
    let n = g.order();
    let mut current = SubgroupMask::identity(n);
    let mut steps = vec![current.clone()];
    let mut factor_orders = Vec::new();
    while !current.is_full() {
        let next = if current.is_trivial() {
            let mins = minimal_normal_subgroups(g).expect("nontrivial");
            pick(mins, rng.as_mut())
        } else {
            let (q, proj) = quotient(g, &current).expect("series steps are normal");
            let mins = minimal_normal_subgroups(&q).expect("nontrivial quotient");
            let chosen = pick(mins, rng.as_mut());
            SubgroupMask::from_elements(n, g.elements().filter(|&x| chosen.contains(proj.apply(x))))
        };
        factor_orders.push(next.popcount() / current.popcount());
        steps.push(next.clone());
        current = next;
    }
    ChiefSeriesRecord {
        steps,
        factor_orders,
    }
}

fn pick(mut mins: Vec<SubgroupMask>, rng: Option<&mut ChaCha8Rng>) -> SubgroupMask {
    match rng {
        Some(rng) => mins
            .choose(rng)
            .expect("at least one minimal normal subgroup")
            .clone(),
        None => mins.swap_remove(0),
    }
}

/// Every normal subgroup: joins of normal closures of conjugacy classes.
pub fn normal_subgroups(g: &FiniteGroup) -> Vec<SubgroupMask> {
    let closures = class_closures(g);
    let trivial = SubgroupMask::identity(g.order());
    let mut seen: FxHashSet<SubgroupMask> = FxHashSet::default();
    seen.insert(trivial.clone());
    let mut all = vec![trivial];
    let mut i = 0;
    while i < all.len() {
        let a = all[i].clone();
        for c in &closures {
            let j = join(g, &a, c);
            if seen.insert(j.clone()) {
                all.push(j);
            }
        }
        i += 1;
    }
    all.sort();
    all
}

/// Largest normal subgroup whose order involves only primes in `pi`.
pub fn o_pi(g: &FiniteGroup, pi: &PrimeSet) -> SubgroupMask {
    class_closures(g)
        .into_iter()
        .filter(|n| pi.admits(n.popcount()))
        .fold(SubgroupMask::identity(g.order()), |acc, n| {
            join(g, &acc, &n)
        })
}

/// Preimage of `O_{p'}(G / O_p(G))`.
pub fn o_pp_prime(g: &FiniteGroup, p: usize) -> SubgroupMask {
    let op = o_pi(g, &PrimeSet::single(p));
    let (q, proj) = quotient(g, &op).expect("O_p is normal");
    let top = o_pi(&q, &PrimeSet::complement_of(p));
    SubgroupMask::from_elements(
        g.order(),
        g.elements().filter(|&x| top.contains(proj.apply(x))),
    )
}

/// The normal Hall `pi`-subgroup, if one exists.
pub fn normal_hall(g: &FiniteGroup, pi: &PrimeSet) -> Option<SubgroupMask> {
    let o = o_pi(g, pi);
    (o.popcount() == pi.part_of(g.order())).then_some(o)
}

/// `p` when `G` is a nontrivial `p`-group.
pub fn pgroup_prime(g: &FiniteGroup) -> Option<usize> {
    arith::prime_power(g.order()).map(|(p, _)| p)
}

fn require_pgroup(g: &FiniteGroup, p: usize) -> Result<(), StructureError> {
    let ok = arith::is_prime(p) && (g.order() == 1 || pgroup_prime(g) == Some(p));
    // Element orders must be powers of p as well; the order test implies it,
    // but a malformed input would show up here.
    if ok && g.element_orders().all(|k| arith::p_part(k, p) == k) {
        Ok(())
    } else {
        Err(StructureError::NotPGroup { p })
    }
}

/// `Phi(P) = <P', P^p>` for a `p`-group.
pub fn frattini_pgroup(g: &FiniteGroup, p: usize) -> Result<SubgroupMask, StructureError> {
    require_pgroup(g, p)?;
    let derived = g.derived_subgroup();
    let powers: Vec<usize> = g.elements().map(|x| g.pow(x, p)).collect();
    Ok(g.closure_with(&derived, powers))
}

/// Central elements of order dividing `p`.
pub fn omega_center(g: &FiniteGroup, p: usize) -> Result<SubgroupMask, StructureError> {
    require_pgroup(g, p)?;
    let z = g.center();
    Ok(SubgroupMask::from_elements(
        g.order(),
        z.members().filter(|&x| p % g.element_order(x) == 0),
    ))
}

/// Elements of `p`-power order.
pub fn p_elements(g: &FiniteGroup, p: usize) -> SubgroupMask {
    SubgroupMask::from_elements(
        g.order(),
        g.elements()
            .filter(|&x| arith::p_part(g.element_order(x), p) == g.element_order(x)),
    )
}

/// Nilpotent iff every Sylow subgroup is normal, i.e. unique.
pub fn is_nilpotent(g: &FiniteGroup) -> bool {
    arith::prime_divisors(g.order())
        .into_iter()
        .all(|p| p_elements(g, p).popcount() == arith::p_part(g.order(), p))
}

/// Minimum number of generators of a nilpotent group: the largest
/// `dim P/Phi(P)` over its Sylow subgroups.
pub fn nilpotent_rank(g: &FiniteGroup) -> usize {
    let cfg = GroupConfig::default();
    arith::prime_divisors(g.order())
        .into_iter()
        .map(|p| {
            let sylow = p_elements(g, p);
            let (pg, _) = g
                .subgroup_as_group(&sylow, &cfg)
                .expect("Sylow of a nilpotent group");
            let phi = frattini_pgroup(&pg, p).expect("p-group");
            let mut index = pg.order() / phi.popcount();
            let mut rank = 0;
            while index > 1 {
                index /= p;
                rank += 1;
            }
            rank
        })
        .max()
        .unwrap_or(0)
}

/// Abelian invariants: per prime, exponents `a_1 <= ... <= a_n` with the
/// Sylow subgroup isomorphic to `C_{p^a_1} x ... x C_{p^a_n}`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct AbelianInvariants(pub BTreeMap<usize, Vec<u32>>);

impl AbelianInvariants {
    pub fn at(&self, p: usize) -> &[u32] {
        self.0.get(&p).map_or(&[], Vec::as_slice)
    }
}

/// Splits off cyclic factors generated by elements of maximal order. The
/// complement of `<x>` is grown greedily over increasing element indices,
/// keeping trivial intersection with `<x>`; a maximal such subgroup is a
/// complement when `x` has maximal order.
pub fn abelian_invariants(g: &FiniteGroup) -> Result<AbelianInvariants, StructureError> {
    if !g.is_abelian() {
        return Err(StructureError::NotAbelian);
    }
    let cfg = GroupConfig::default();
    let mut out = BTreeMap::new();
    for p in arith::prime_divisors(g.order()) {
        let (sylow, _) = g.subgroup_as_group(&p_elements(g, p), &cfg)?;
        let mut exps = split_cyclic(&sylow, p, &cfg)?;
        exps.sort_unstable();
        out.insert(p, exps);
    }
    Ok(AbelianInvariants(out))
}

fn split_cyclic(g: &FiniteGroup, p: usize, cfg: &GroupConfig) -> Result<Vec<u32>, StructureError> {
    if g.order() == 1 {
        return Ok(vec![]);
    }
    let x = (0..g.order())
        .max_by_key(|&x| (g.element_order(x), std::cmp::Reverse(x)))
        .expect("nonempty");
    let cyc = g.generate([x]);
    let mut k = SubgroupMask::identity(g.order());
    for y in g.elements() {
        if k.contains(y) {
            continue;
        }
        let bigger = g.closure_with(&k, [y]);
        if bigger.intersection(&cyc).is_trivial() {
            k = bigger;
        }
    }
    if k.popcount() * cyc.popcount() != g.order() {
        return Err(StructureError::NotAbelian);
    }
    let mut a = 0;
    let mut m = g.element_order(x);
    while m > 1 {
        m /= p;
        a += 1;
    }
    let (rest, _) = g.subgroup_as_group(&k, cfg)?;
    let mut exps = split_cyclic(&rest, p, cfg)?;
    exps.push(a);
    Ok(exps)
}

/// `{x in S : x^(p^k) = 1}`.
fn omega_k(g: &FiniteGroup, s: &SubgroupMask, p: usize, k: u32) -> SubgroupMask {
    let bound = p.pow(k);
    SubgroupMask::from_elements(
        g.order(),
        s.members().filter(|&x| bound % g.element_order(x) == 0),
    )
}

/// Exponents of an abelian `p`-subgroup read off from the `Omega_k` orders.
fn exponents_by_omega(g: &FiniteGroup, s: &SubgroupMask, p: usize) -> Vec<u32> {
    let log_p = |mut m: usize| {
        let mut r = 0u32;
        while m > 1 {
            m /= p;
            r += 1;
        }
        r
    };
    let mut at_least = Vec::new();
    let mut prev = 1;
    let mut k = 1;
    loop {
        let size = omega_k(g, s, p, k).popcount();
        if size == prev {
            break;
        }
        at_least.push(log_p(size / prev));
        prev = size;
        k += 1;
    }
    // at_least[k-1] = #{i : a_i >= k}
    let mut exps = Vec::new();
    for (k, &c) in at_least.iter().enumerate() {
        let next = at_least.get(k + 1).copied().unwrap_or(0);
        exps.extend(std::iter::repeat_n(k as u32 + 1, (c - next) as usize));
    }
    exps.sort_unstable();
    exps
}

/// The characteristic series `Phi(P) < P_1 < ... < P_n = P` with
/// `P_i = Omega_{a_i}(P) Phi(P)`, continued below `Phi(P)` by the same
/// construction applied to `Phi(P) = P^p`. When `maps` is given every step
/// is checked to be invariant under it.
pub fn abelian_char_series(
    g: &FiniteGroup,
    p: usize,
    maps: Option<&MapSet>,
) -> Result<ChainCertificate, StructureError> {
    require_pgroup(g, p)?;
    if !g.is_abelian() {
        return Err(StructureError::NotAbelian);
    }
    let mut steps = Vec::new();
    build_abelian_series(g, &SubgroupMask::full(g.order()), p, &mut steps)?;
    if let Some(maps) = maps {
        if let Some(step) = steps.iter().position(|s| !maps.preserves(s)) {
            return Err(StructureError::NotInvariant { step });
        }
    }
    let cyclic_witness = steps
        .windows(2)
        .map(|w| {
            w[1].members()
                .find(|&x| !w[0].contains(x))
                .expect("strictly increasing")
        })
        .collect();
    let invariance_kind = maps.map_or(InvarianceKind::None, |m| m.kind.into());
    Ok(ChainCertificate {
        steps,
        cyclic_witness,
        invariance_kind,
    })
}

fn build_abelian_series(
    g: &FiniteGroup,
    s: &SubgroupMask,
    p: usize,
    steps: &mut Vec<SubgroupMask>,
) -> Result<(), StructureError> {
    if s.is_trivial() {
        steps.push(s.clone());
        return Ok(());
    }
    let exps = exponents_by_omega(g, s, p);
    if exps.windows(2).any(|w| w[0] == w[1]) {
        return Err(StructureError::InvariantsNotStrict { p });
    }
    let phi = SubgroupMask::from_elements(g.order(), s.members().map(|x| g.pow(x, p)));
    build_abelian_series(g, &phi, p, steps)?;
    for &a in &exps {
        let omega = omega_k(g, s, p, a);
        steps.push(g.closure_with(&phi, omega.members()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{
        abelian_of_type, cyclic, dihedral, elementary_abelian, from_generators, klein_four,
        quaternion8, PermSpec,
    };
    use crate::morphisms::enumerate_automorphisms;

    fn perm_group(spec: PermSpec) -> FiniteGroup {
        from_generators(&spec, 1000, &GroupConfig::default()).unwrap()
    }

    fn s3() -> FiniteGroup {
        perm_group(PermSpec::symmetric(3))
    }

    fn a4() -> FiniteGroup {
        perm_group(PermSpec::alternating(4))
    }

    #[test]
    fn normal_closures() {
        let g = s3();
        assert!(normal_closure(&g, [0]).is_trivial());
        let three_cycle = (0..6).find(|&x| g.element_order(x) == 3).unwrap();
        assert_eq!(normal_closure(&g, [three_cycle]).popcount(), 3);
        let transposition = (0..6).find(|&x| g.element_order(x) == 2).unwrap();
        assert!(normal_closure(&g, [transposition]).is_full());
    }

    #[test]
    fn minimal_normals() {
        let c6 = cyclic(6).unwrap();
        let sizes: Vec<usize> = minimal_normal_subgroups(&c6)
            .unwrap()
            .iter()
            .map(|m| m.popcount())
            .collect();
        assert_eq!(sizes, vec![2, 3]);
        let v = minimal_normal_subgroups(&klein_four()).unwrap();
        assert_eq!(v.len(), 3);
        assert!(v.iter().all(|m| m.popcount() == 2));
        let a = minimal_normal_subgroups(&a4()).unwrap();
        assert_eq!(a.len(), 1);
        assert_eq!(a[0].popcount(), 4);
        assert_eq!(
            minimal_normal_subgroups(&cyclic(1).unwrap()),
            Err(StructureError::TrivialGroup)
        );
    }

    #[test]
    fn chief_series_examples() {
        let t = chief_series(&cyclic(1).unwrap());
        assert!(t.factor_orders.is_empty());
        assert_eq!(t.steps.len(), 1);
        assert_eq!(chief_series(&s3()).factor_orders, vec![3, 2]);
        assert_eq!(chief_series(&a4()).factor_orders, vec![4, 3]);
        let s4 = perm_group(PermSpec::symmetric(4));
        let cs = chief_series(&s4);
        assert_eq!(cs.factor_orders, vec![4, 3, 2]);
        assert!(cs.steps.iter().all(|s| s4.is_normal(s)));
    }

    #[test]
    fn normal_subgroup_counts() {
        assert_eq!(normal_subgroups(&cyclic(7).unwrap()).len(), 2);
        assert_eq!(normal_subgroups(&s3()).len(), 3);
        assert_eq!(normal_subgroups(&dihedral(4).unwrap()).len(), 6);
        assert_eq!(
            normal_subgroups(&elementary_abelian(2, 3).unwrap()).len(),
            16
        );
    }

    #[test]
    fn o_pi_examples() {
        let g = s3();
        assert!(o_pi(&g, &PrimeSet::all()).is_full());
        assert_eq!(o_pi(&g, &PrimeSet::single(3)).popcount(), 3);
        assert!(o_pi(&g, &PrimeSet::single(2)).is_trivial());
        assert!(o_pp_prime(&dihedral(4).unwrap(), 2).is_full());
        assert!(o_pp_prime(&g, 3).is_full());
        assert_eq!(o_pp_prime(&g, 2).popcount(), 3);
    }

    #[test]
    fn hall_examples() {
        let g = s3();
        assert!(normal_hall(&g, &PrimeSet::Only(vec![2, 3]))
            .unwrap()
            .is_full());
        assert_eq!(normal_hall(&g, &PrimeSet::single(3)).unwrap().popcount(), 3);
        assert_eq!(normal_hall(&a4(), &PrimeSet::single(3)), None);
    }

    #[test]
    fn frattini_and_omega() {
        let e = elementary_abelian(3, 2).unwrap();
        assert!(frattini_pgroup(&e, 3).unwrap().is_trivial());
        assert_eq!(
            frattini_pgroup(&cyclic(8).unwrap(), 2).unwrap().popcount(),
            4
        );
        assert_eq!(
            frattini_pgroup(&dihedral(4).unwrap(), 2)
                .unwrap()
                .popcount(),
            2
        );
        assert_eq!(
            frattini_pgroup(&s3(), 2),
            Err(StructureError::NotPGroup { p: 2 })
        );

        assert!(omega_center(&e, 3).unwrap().is_full());
        assert_eq!(omega_center(&cyclic(8).unwrap(), 2).unwrap().popcount(), 2);
        assert_eq!(omega_center(&quaternion8(), 2).unwrap().popcount(), 2);
        assert!(omega_center(&cyclic(6).unwrap(), 2).is_err());
    }

    #[test]
    fn invariants_examples() {
        assert_eq!(abelian_invariants(&klein_four()).unwrap().at(2), &[1, 1]);
        let c12 = abelian_invariants(&cyclic(12).unwrap()).unwrap();
        assert_eq!(c12.at(2), &[2]);
        assert_eq!(c12.at(3), &[1]);
        assert_eq!(
            abelian_invariants(&abelian_of_type(&[2, 4]).unwrap())
                .unwrap()
                .at(2),
            &[1, 2]
        );
        assert_eq!(abelian_invariants(&s3()), Err(StructureError::NotAbelian));
    }

    #[test]
    fn abelian_series_examples() {
        for (p, a) in [(2usize, 3u32), (3, 2), (5, 1)] {
            let g = cyclic(p.pow(a)).unwrap();
            let cert = abelian_char_series(&g, p, None).unwrap();
            assert_eq!(cert.factor_orders(), vec![p; a as usize]);
        }
        let g = abelian_of_type(&[2, 4]).unwrap();
        let autos = enumerate_automorphisms(&g, 1000).unwrap();
        let cert = abelian_char_series(&g, 2, Some(&autos)).unwrap();
        assert_eq!(cert.factor_orders(), vec![2, 2, 2]);
        crate::certificate::check_chain(&g, &cert, Some(&autos), false).unwrap();

        let g = abelian_of_type(&[2, 4, 8]).unwrap();
        let cert = abelian_char_series(&g, 2, None).unwrap();
        assert_eq!(cert.factor_orders(), vec![2; 6]);

        assert_eq!(
            abelian_char_series(&klein_four(), 2, None),
            Err(StructureError::InvariantsNotStrict { p: 2 })
        );
    }
}
