//! Finite groups stored as Cayley tables over element indices `0..n`.
//!
//! Index 0 is always the identity. Every constructor produces a
//! deterministic indexing, so two runs over the same input agree
//! bit-for-bit:
//!
//! * [`from_generators`]: breadth-first discovery order, generators applied
//!   in list order. Permutation products apply the left factor first,
//!   `(ab)(i) = b(a(i))`.
//! * [`cyclic`]: index `i` is `x^i`.
//! * [`abelian_of_type`]: mixed radix, first factor most significant, so it
//!   coincides with iterated [`direct_product`].
//! * [`dihedral`]: index `i + m*j` is `r^i s^j` with `s r s = r^-1`.
//! * [`quaternion8`]: index `i + 4*j` is `x^i y^j` with `y^2 = x^2`,
//!   `y^-1 x y = x^-1`.
//! * [`direct_product`]: pair `(g, h)` has index `g*|H| + h`.

use std::collections::VecDeque;
use std::sync::OnceLock;

use fixedbitset::FixedBitSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::arith;
use crate::error::GroupError;

/// Compact element index used in tables and maps.
pub(crate) type Ix = u16;

/// Hard ceiling imposed by the `u16` table entries.
pub const ORDER_CEILING: usize = 1 << 16;

/// Bits of column-check state kept live at once in `from_table`.
const COLUMN_BLOCK_BITS: usize = 1 << 21;

/// Construction limits for [`FiniteGroup`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GroupConfig {
    /// Largest group order any constructor will build.
    pub max_order: usize,
    /// Associativity is checked on all triples up to this order.
    pub assoc_full_limit: usize,
    /// Number of random triples checked above `assoc_full_limit`.
    pub assoc_samples: usize,
    pub seed: u64,
}

impl Default for GroupConfig {
    fn default() -> Self {
        GroupConfig {
            max_order: 20_000,
            assoc_full_limit: 512,
            assoc_samples: 10_000,
            seed: 0x5eed_6a11,
        }
    }
}

#[derive(Clone, Debug)]
struct ClassData {
    class_of: Vec<u32>,
    classes: Vec<Vec<usize>>,
}

/// A finite group given by its multiplication table.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<Ix>,
    inverse: Vec<Ix>,
    element_order: Vec<u32>,
    classes: OnceLock<ClassData>,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.table == other.table
    }
}

impl Eq for FiniteGroup {}

impl FiniteGroup {
    /// Builds a group from a row-major `n*n` table, checking the group axioms.
    pub fn from_table(order: usize, table: Vec<Ix>, cfg: &GroupConfig) -> Result<Self, GroupError> {
        if order == 0 {
            return Err(GroupError::InvalidTable("empty table".into()));
        }
        if order > cfg.max_order || order > ORDER_CEILING {
            return Err(GroupError::OrderTooLarge {
                order,
                cap: cfg.max_order.min(ORDER_CEILING),
            });
        }
        if table.len() != order * order {
            return Err(GroupError::InvalidTable(format!(
                "table has {} entries, expected {}",
                table.len(),
                order * order
            )));
        }
        let n = order;
        for a in 0..n {
            if table[a] as usize != a || table[a * n] as usize != a {
                return Err(GroupError::InvalidTable(format!(
                    "index 0 is not an identity at {a}"
                )));
            }
        }
        // Latin square: rows and columns are permutations. Columns are
        // checked in blocks whose bitset stays in cache.
        let mut seen = FixedBitSet::with_capacity(n);
        for a in 0..n {
            seen.clear();
            for &c in &table[a * n..(a + 1) * n] {
                if c as usize >= n || seen.put(c as usize) {
                    return Err(GroupError::InvalidTable(format!(
                        "row {a} is not a permutation"
                    )));
                }
            }
        }
        let block = (COLUMN_BLOCK_BITS / n).clamp(1, n);
        let mut seen_in_block = FixedBitSet::with_capacity(block * n);
        for start in (0..n).step_by(block) {
            let end = (start + block).min(n);
            seen_in_block.clear();
            for a in 0..n {
                for (j, &c) in table[a * n + start..a * n + end].iter().enumerate() {
                    if seen_in_block.put(j * n + c as usize) {
                        return Err(GroupError::InvalidTable(format!(
                            "column {} is not a permutation",
                            start + j
                        )));
                    }
                }
            }
        }
        let m = |a: usize, b: usize| table[a * n + b] as usize;
        if n <= cfg.assoc_full_limit {
            for a in 0..n {
                for b in 0..n {
                    let ab = m(a, b);
                    for c in 0..n {
                        if m(ab, c) != m(a, m(b, c)) {
                            return Err(GroupError::NotAssociative { a, b, c });
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            for _ in 0..cfg.assoc_samples {
                let (a, b, c) = (
                    rng.gen_range(0..n),
                    rng.gen_range(0..n),
                    rng.gen_range(0..n),
                );
                if m(m(a, b), c) != m(a, m(b, c)) {
                    return Err(GroupError::NotAssociative { a, b, c });
                }
            }
        }
        let mut inverse = vec![0 as Ix; n];
        for a in 0..n {
            let row = &table[a * n..(a + 1) * n];
            let b = row
                .iter()
                .position(|&c| c == 0)
                .expect("latin square row contains identity");
            inverse[a] = b as Ix;
        }
        let mut element_order = vec![0u32; n];
        for (a, slot) in element_order.iter_mut().enumerate() {
            let mut k = 1u32;
            let mut x = a;
            while x != 0 {
                x = m(x, a);
                k += 1;
            }
            if n % k as usize != 0 {
                return Err(GroupError::InvalidTable(format!(
                    "element {a} has order {k} not dividing {n}"
                )));
            }
            *slot = k;
        }
        Ok(FiniteGroup {
            order,
            table,
            inverse,
            element_order,
            classes: OnceLock::new(),
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    #[inline]
    pub fn element_order(&self, a: usize) -> usize {
        self.element_order[a] as usize
    }

    pub fn element_orders(&self) -> impl Iterator<Item = usize> + '_ {
        self.element_order.iter().map(|&k| k as usize)
    }

    pub fn pow(&self, a: usize, k: usize) -> usize {
        let k = k % self.element_order(a);
        (0..k).fold(0, |acc, _| self.mul(acc, a))
    }

    /// `g^-1 x g`.
    #[inline]
    pub fn conj(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), x), g)
    }

    /// `a^-1 b^-1 a b`.
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> usize {
        self.element_orders().fold(1, arith::lcm)
    }

    fn class_data(&self) -> &ClassData {
        self.classes.get_or_init(|| {
            let n = self.order;
            let mut class_of = vec![u32::MAX; n];
            let mut classes = Vec::new();
            for x in 0..n {
                if class_of[x] != u32::MAX {
                    continue;
                }
                let id = classes.len() as u32;
                let mut members = Vec::new();
                for g in 0..n {
                    let y = self.conj(x, g);
                    if class_of[y] == u32::MAX {
                        class_of[y] = id;
                        members.push(y);
                    }
                }
                members.sort_unstable();
                classes.push(members);
            }
            ClassData { class_of, classes }
        })
    }

    /// Conjugacy classes, each sorted, listed by least member.
    pub fn conjugacy_classes(&self) -> &[Vec<usize>] {
        &self.class_data().classes
    }

    pub fn class_of(&self, x: usize) -> &[usize] {
        let data = self.class_data();
        &data.classes[data.class_of[x] as usize]
    }

    pub fn class_size(&self, x: usize) -> usize {
        self.class_of(x).len()
    }

    /// The subgroup generated by `base` together with `extra`.
    ///
    /// `base` must already be a subgroup. The result is grown as a union of
    /// left cosets of the current subgroup, one new generator at a time.
    pub fn closure_with(
        &self,
        base: &SubgroupMask,
        extra: impl IntoIterator<Item = usize>,
    ) -> SubgroupMask {
        let mut mask = base.clone();
        let mut elems: Vec<usize> = base.members().collect();
        for g in extra {
            if mask.contains(g) {
                continue;
            }
            let sub: Vec<usize> = elems.clone();
            let mut i = 0;
            while i < elems.len() {
                let y = self.mul(elems[i], g);
                if !mask.contains(y) {
                    for &h in &sub {
                        let z = self.mul(y, h);
                        mask.insert(z);
                        elems.push(z);
                    }
                }
                i += 1;
            }
        }
        mask
    }

    /// The subgroup generated by `gens`.
    pub fn generate(&self, gens: impl IntoIterator<Item = usize>) -> SubgroupMask {
        self.closure_with(&SubgroupMask::identity(self.order), gens)
    }

    pub fn is_subgroup(&self, mask: &SubgroupMask) -> bool {
        if mask.parent_order() != self.order || !mask.contains(0) {
            return false;
        }
        let members: Vec<usize> = mask.members().collect();
        members.iter().all(|&a| mask.contains(self.inv(a)))
            && members
                .iter()
                .all(|&a| members.iter().all(|&b| mask.contains(self.mul(a, b))))
    }

    /// Whether `n` is normal in the whole group.
    pub fn is_normal(&self, n: &SubgroupMask) -> bool {
        n.members()
            .all(|x| self.class_of(x).iter().all(|&y| n.contains(y)))
    }

    /// Whether `n` is normalised by every element of `k`.
    pub fn is_normal_in(&self, n: &SubgroupMask, k: &SubgroupMask) -> bool {
        k.members()
            .all(|g| n.members().all(|x| n.contains(self.conj(x, g))))
    }

    pub fn center(&self) -> SubgroupMask {
        SubgroupMask::from_elements(
            self.order,
            (0..self.order).filter(|&z| (0..self.order).all(|g| self.mul(z, g) == self.mul(g, z))),
        )
    }

    /// Closure of all commutators.
    pub fn derived_subgroup(&self) -> SubgroupMask {
        self.derived_of(&SubgroupMask::full(self.order))
    }

    /// `[H, H]` for a subgroup `H`.
    pub fn derived_of(&self, h: &SubgroupMask) -> SubgroupMask {
        let members: Vec<usize> = h.members().collect();
        let mut out = SubgroupMask::identity(self.order);
        for &a in &members {
            for &b in &members {
                let c = self.commutator(a, b);
                if !out.contains(c) {
                    out = self.closure_with(&out, [c]);
                }
            }
        }
        out
    }

    /// Induced multiplication table on a subgroup; members keep their
    /// relative order, so the identity stays at index 0.
    pub fn subgroup_as_group(
        &self,
        h: &SubgroupMask,
        cfg: &GroupConfig,
    ) -> Result<(FiniteGroup, Vec<usize>), GroupError> {
        let members: Vec<usize> = h.members().collect();
        let mut local = vec![u32::MAX; self.order];
        for (i, &x) in members.iter().enumerate() {
            local[x] = i as u32;
        }
        let m = members.len();
        let mut table = Vec::with_capacity(m * m);
        for &a in &members {
            for &b in &members {
                let c = local[self.mul(a, b)];
                if c == u32::MAX {
                    return Err(GroupError::InvalidTable("mask is not closed".into()));
                }
                table.push(c as Ix);
            }
        }
        Ok((FiniteGroup::from_table(m, table, cfg)?, members))
    }
}

/// Membership mask of a subgroup of a fixed parent group.
///
/// Masks order by `(popcount, sorted member list)`, which is the
/// tie-break used wherever a deterministic choice among subgroups is made.
#[derive(Clone, PartialEq, Eq, Hash, Debug, serde::Serialize, serde::Deserialize)]
#[serde(try_from = "MaskRepr", into = "MaskRepr")]
pub struct SubgroupMask {
    bits: FixedBitSet,
}

/// Serialized form: parent order and sorted members.
#[derive(serde::Serialize, serde::Deserialize)]
struct MaskRepr {
    order: usize,
    members: Vec<usize>,
}

impl From<SubgroupMask> for MaskRepr {
    fn from(m: SubgroupMask) -> Self {
        MaskRepr {
            order: m.parent_order(),
            members: m.to_vec(),
        }
    }
}

impl TryFrom<MaskRepr> for SubgroupMask {
    type Error = String;

    fn try_from(r: MaskRepr) -> Result<Self, String> {
        match r.members.iter().find(|&&x| x >= r.order) {
            Some(x) => Err(format!("member {x} out of range for order {}", r.order)),
            None => Ok(SubgroupMask::from_elements(r.order, r.members)),
        }
    }
}

impl SubgroupMask {
    pub fn identity(n: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(n);
        bits.insert(0);
        SubgroupMask { bits }
    }

    pub fn full(n: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(n);
        bits.insert_range(..);
        SubgroupMask { bits }
    }

    /// A raw mask; not checked for closure.
    pub fn from_elements(n: usize, elems: impl IntoIterator<Item = usize>) -> Self {
        let mut bits = FixedBitSet::with_capacity(n);
        for e in elems {
            bits.insert(e);
        }
        SubgroupMask { bits }
    }

    pub fn from_bools(bools: &[bool]) -> Self {
        Self::from_elements(
            bools.len(),
            bools.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i),
        )
    }

    pub fn parent_order(&self) -> usize {
        self.bits.len()
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.bits.contains(x)
    }

    pub(crate) fn insert(&mut self, x: usize) {
        self.bits.insert(x);
    }

    /// Flips membership of `x`; used to build corrupted masks in tests and audits.
    pub fn toggle(&mut self, x: usize) {
        self.bits.toggle(x);
    }

    pub fn popcount(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn members(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.members().collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.popcount() == 1 && self.contains(0)
    }

    pub fn is_full(&self) -> bool {
        self.popcount() == self.parent_order()
    }

    pub fn is_subset(&self, other: &SubgroupMask) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn intersection(&self, other: &SubgroupMask) -> SubgroupMask {
        let mut bits = self.bits.clone();
        bits.intersect_with(&other.bits);
        SubgroupMask { bits }
    }

    /// Set union; a subgroup only when one side contains the other.
    pub fn union(&self, other: &SubgroupMask) -> SubgroupMask {
        let mut bits = self.bits.clone();
        bits.union_with(&other.bits);
        SubgroupMask { bits }
    }
}

impl PartialOrd for SubgroupMask {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SubgroupMask {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.popcount()
            .cmp(&other.popcount())
            .then_with(|| self.members().cmp(other.members()))
    }
}

/// Join of two subgroups.
pub fn join(g: &FiniteGroup, a: &SubgroupMask, b: &SubgroupMask) -> SubgroupMask {
    if b.is_subset(a) {
        return a.clone();
    }
    if a.is_subset(b) {
        return b.clone();
    }
    g.closure_with(a, b.members())
}

/// A total map between groups given by its image array.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GroupMap {
    images: Vec<Ix>,
    target_order: usize,
}

impl GroupMap {
    pub fn new(images: Vec<usize>, target_order: usize) -> Self {
        assert!(
            images.iter().all(|&y| y < target_order),
            "image out of range"
        );
        GroupMap {
            images: images.into_iter().map(|y| y as Ix).collect(),
            target_order,
        }
    }

    pub(crate) fn from_raw(images: Vec<Ix>, target_order: usize) -> Self {
        GroupMap {
            images,
            target_order,
        }
    }

    pub fn identity(n: usize) -> Self {
        GroupMap::new((0..n).collect(), n)
    }

    pub fn source_order(&self) -> usize {
        self.images.len()
    }

    pub fn target_order(&self) -> usize {
        self.target_order
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    pub(crate) fn raw(&self) -> &[Ix] {
        &self.images
    }

    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&y| y as usize).collect()
    }

    /// `self` first, then `next`.
    pub fn then(&self, next: &GroupMap) -> GroupMap {
        assert_eq!(self.target_order, next.source_order());
        GroupMap {
            images: self
                .images
                .iter()
                .map(|&y| next.images[y as usize])
                .collect(),
            target_order: next.target_order,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, &y)| i == y as usize)
    }

    pub fn is_bijective(&self) -> bool {
        if self.source_order() != self.target_order {
            return false;
        }
        let mut seen = FixedBitSet::with_capacity(self.target_order);
        self.images.iter().all(|&y| !seen.put(y as usize))
    }

    pub fn inverse(&self) -> Option<GroupMap> {
        if !self.is_bijective() {
            return None;
        }
        let mut inv = vec![0 as Ix; self.images.len()];
        for (x, &y) in self.images.iter().enumerate() {
            inv[y as usize] = x as Ix;
        }
        Some(GroupMap::from_raw(inv, self.images.len()))
    }

    /// Checks `f(ab) = f(a) f(b)` on every pair.
    pub fn is_homomorphism(&self, src: &FiniteGroup, dst: &FiniteGroup) -> bool {
        self.source_order() == src.order()
            && self.target_order == dst.order()
            && self.apply(0) == 0
            && (0..src.order()).all(|a| {
                let fa = self.apply(a);
                (0..src.order()).all(|b| self.apply(src.mul(a, b)) == dst.mul(fa, self.apply(b)))
            })
    }

    pub fn image_of(&self, mask: &SubgroupMask) -> SubgroupMask {
        SubgroupMask::from_elements(self.target_order, mask.members().map(|x| self.apply(x)))
    }

    /// Whether `f(H) ⊆ H` for a mask over the source (= target) group.
    pub fn maps_into(&self, mask: &SubgroupMask) -> bool {
        mask.members().all(|x| mask.contains(self.apply(x)))
    }

    pub fn kernel(&self) -> SubgroupMask {
        SubgroupMask::from_elements(
            self.source_order(),
            (0..self.source_order()).filter(|&x| self.apply(x) == 0),
        )
    }
}

/// Permutation generators of degree `degree`; each generator lists the image
/// of every point `0..degree`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PermSpec {
    pub degree: usize,
    pub generators: Vec<Vec<usize>>,
}

impl PermSpec {
    pub fn new(degree: usize, generators: Vec<Vec<usize>>) -> Self {
        PermSpec { degree, generators }
    }

    /// Parses cycle notation such as `(0 1)(2 3)` on points `0..degree`.
    pub fn cycles_to_images(degree: usize, cycles: &[&[usize]]) -> Vec<usize> {
        let mut img: Vec<usize> = (0..degree).collect();
        for cycle in cycles {
            for (i, &a) in cycle.iter().enumerate() {
                img[a] = cycle[(i + 1) % cycle.len()];
            }
        }
        img
    }

    /// `Sym(d)` generated by a transposition and a `d`-cycle.
    pub fn symmetric(d: usize) -> Self {
        if d < 2 {
            return PermSpec::new(d.max(1), vec![]);
        }
        let cycle: Vec<usize> = (0..d).collect();
        PermSpec::new(
            d,
            vec![
                Self::cycles_to_images(d, &[&[0, 1]]),
                Self::cycles_to_images(d, &[&cycle]),
            ],
        )
    }

    /// `Alt(d)` generated by the 3-cycles `(0 1 i)`.
    pub fn alternating(d: usize) -> Self {
        if d < 3 {
            return PermSpec::new(d.max(1), vec![]);
        }
        PermSpec::new(
            d,
            (2..d)
                .map(|i| Self::cycles_to_images(d, &[&[0, 1, i]]))
                .collect(),
        )
    }

    fn validate(&self) -> Result<(), GroupError> {
        if self.degree == 0 {
            return Err(GroupError::InvalidParameter(
                "permutation degree must be positive".into(),
            ));
        }
        for (index, g) in self.generators.iter().enumerate() {
            let mut seen = FixedBitSet::with_capacity(self.degree);
            let ok = g.len() == self.degree && g.iter().all(|&i| i < self.degree && !seen.put(i));
            if !ok {
                return Err(GroupError::InvalidPermutation { index });
            }
        }
        Ok(())
    }
}

/// Closes the permutation group generated by `spec` and tabulates it.
pub fn from_generators(
    spec: &PermSpec,
    cap: usize,
    cfg: &GroupConfig,
) -> Result<FiniteGroup, GroupError> {
    spec.validate()?;
    let d = spec.degree;
    let identity: Vec<Ix> = (0..d as Ix).collect();
    let gens: Vec<Vec<Ix>> = spec
        .generators
        .iter()
        .map(|g| g.iter().map(|&i| i as Ix).collect())
        .collect();
    let mut index: FxHashMap<Vec<Ix>, usize> = FxHashMap::default();
    let mut elems: Vec<Vec<Ix>> = vec![identity.clone()];
    index.insert(identity, 0);
    let mut queue = VecDeque::from([0usize]);
    let compose = |a: &[Ix], b: &[Ix]| -> Vec<Ix> { a.iter().map(|&i| b[i as usize]).collect() };
    while let Some(i) = queue.pop_front() {
        for g in &gens {
            let p = compose(&elems[i], g);
            if !index.contains_key(&p) {
                if elems.len() >= cap {
                    return Err(GroupError::ClosureExceedsCap { cap });
                }
                index.insert(p.clone(), elems.len());
                queue.push_back(elems.len());
                elems.push(p);
            }
        }
    }
    let n = elems.len();
    if n > cfg.max_order || n > ORDER_CEILING {
        return Err(GroupError::OrderTooLarge {
            order: n,
            cap: cfg.max_order,
        });
    }
    let mut table = Vec::with_capacity(n * n);
    for a in &elems {
        for b in &elems {
            table.push(index[&compose(a, b)] as Ix);
        }
    }
    FiniteGroup::from_table(n, table, cfg)
}

fn from_rule(
    n: usize,
    cfg: &GroupConfig,
    rule: impl Fn(usize, usize) -> usize,
) -> Result<FiniteGroup, GroupError> {
    if n > cfg.max_order || n > ORDER_CEILING {
        return Err(GroupError::ProductExceedsCap {
            order: n,
            cap: cfg.max_order,
        });
    }
    let mut table = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            table.push(rule(a, b) as Ix);
        }
    }
    FiniteGroup::from_table(n, table, cfg)
}

pub fn cyclic(n: usize) -> Result<FiniteGroup, GroupError> {
    if n == 0 {
        return Err(GroupError::InvalidParameter(
            "cyclic group of order 0".into(),
        ));
    }
    from_rule(n, &GroupConfig::default(), |a, b| (a + b) % n)
}

pub fn klein_four() -> FiniteGroup {
    abelian_of_type(&[2, 2]).expect("valid type")
}

/// `C_{m_1} x ... x C_{m_k}` for prime powers `m_i`.
pub fn abelian_of_type(factors: &[usize]) -> Result<FiniteGroup, GroupError> {
    for &m in factors {
        if arith::prime_power(m).is_none() {
            return Err(GroupError::InvalidParameter(format!(
                "{m} is not a prime power"
            )));
        }
    }
    let n: usize = factors.iter().product();
    from_rule(n, &GroupConfig::default(), |a, b| {
        let mut out = 0;
        let mut weight = n;
        let (mut ra, mut rb) = (a, b);
        for &m in factors {
            weight /= m;
            let (da, db) = (ra / weight, rb / weight);
            ra %= weight;
            rb %= weight;
            out += ((da + db) % m) * weight;
        }
        out
    })
}

pub fn elementary_abelian(p: usize, k: usize) -> Result<FiniteGroup, GroupError> {
    if !arith::is_prime(p) {
        return Err(GroupError::InvalidParameter(format!("{p} is not prime")));
    }
    abelian_of_type(&vec![p; k])
}

/// Dihedral group of order `2m`.
pub fn dihedral(m: usize) -> Result<FiniteGroup, GroupError> {
    if m == 0 {
        return Err(GroupError::InvalidParameter(
            "dihedral group needs m >= 1".into(),
        ));
    }
    from_rule(2 * m, &GroupConfig::default(), |a, b| {
        let (i, s) = (a % m, a / m);
        let (k, t) = (b % m, b / m);
        let rot = if s == 0 { (i + k) % m } else { (i + m - k) % m };
        rot + m * ((s + t) % 2)
    })
}

pub fn quaternion8() -> FiniteGroup {
    from_rule(8, &GroupConfig::default(), |a, b| {
        let (i, s) = (a % 4, a / 4);
        let (k, t) = (b % 4, b / 4);
        // x^i y^s x^k y^t: move y^s past x^k, then y^s y^t.
        let mut rot = if s == 0 { i + k } else { i + (4 - k) % 4 };
        if s == 1 && t == 1 {
            rot += 2;
        }
        (rot % 4) + 4 * ((s + t) % 2)
    })
    .expect("Q8 table is valid")
}

pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> Result<FiniteGroup, GroupError> {
    direct_product_with(g, h, &GroupConfig::default())
}

pub fn direct_product_with(
    g: &FiniteGroup,
    h: &FiniteGroup,
    cfg: &GroupConfig,
) -> Result<FiniteGroup, GroupError> {
    let m = h.order();
    let n = g
        .order()
        .checked_mul(m)
        .ok_or(GroupError::ProductExceedsCap {
            order: usize::MAX,
            cap: cfg.max_order,
        })?;
    from_rule(n, cfg, |a, b| g.mul(a / m, b / m) * m + h.mul(a % m, b % m))
}

/// The quotient by a normal subgroup and the projection onto it.
///
/// Cosets are numbered by increasing least member, so the identity coset is 0.
pub fn quotient(g: &FiniteGroup, n: &SubgroupMask) -> Result<(FiniteGroup, GroupMap), GroupError> {
    quotient_with(g, n, &GroupConfig::default())
}

pub fn quotient_with(
    g: &FiniteGroup,
    n: &SubgroupMask,
    cfg: &GroupConfig,
) -> Result<(FiniteGroup, GroupMap), GroupError> {
    if !g.is_subgroup(n) {
        return Err(GroupError::InvalidTable(
            "quotient by a non-subgroup mask".into(),
        ));
    }
    if !g.is_normal(n) {
        return Err(GroupError::NotNormal);
    }
    let order = g.order();
    let members: Vec<usize> = n.members().collect();
    let mut coset = vec![u32::MAX; order];
    let mut reps = Vec::new();
    for x in 0..order {
        if coset[x] != u32::MAX {
            continue;
        }
        let id = reps.len() as u32;
        for &m in &members {
            coset[g.mul(x, m)] = id;
        }
        reps.push(x);
    }
    let q = reps.len();
    let mut table = Vec::with_capacity(q * q);
    for &a in &reps {
        for &b in &reps {
            table.push(coset[g.mul(a, b)] as Ix);
        }
    }
    // Well-definedness on arbitrary representatives.
    let check = |a: usize, b: usize| {
        coset[g.mul(a, b)] as usize == table[coset[a] as usize * q + coset[b] as usize] as usize
    };
    if order <= cfg.assoc_full_limit {
        for a in 0..order {
            for b in 0..order {
                if !check(a, b) {
                    return Err(GroupError::NotNormal);
                }
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x9e37);
        for _ in 0..cfg.assoc_samples {
            if !check(rng.gen_range(0..order), rng.gen_range(0..order)) {
                return Err(GroupError::NotNormal);
            }
        }
    }
    let quotient = FiniteGroup::from_table(q, table, cfg)?;
    let projection = GroupMap::from_raw(coset.into_iter().map(|c| c as Ix).collect(), q);
    Ok((quotient, projection))
}
