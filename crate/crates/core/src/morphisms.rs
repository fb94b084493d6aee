//! Homomorphism search: automorphisms, endomorphisms, inner automorphisms,
//! `Aut(G)` as a concrete group, and orbits of elements under map sets.
//!
//! All searches backtrack over images of a fixed generator sequence. For
//! that sequence a [`Plan`] records, level by level, how every element of
//! the growing generated subgroup is reached from an earlier one
//! (`c = a * s_j`) and which remaining Cayley-graph edges must be checked.
//! The plan is built once per group and reused for every candidate tuple;
//! a full assignment that passes every edge check is a homomorphism.

use std::collections::VecDeque;
use std::ops::ControlFlow;

use fixedbitset::FixedBitSet;
use rustc_hash::FxHashMap;

use crate::error::MorphismError;
use crate::group::{FiniteGroup, GroupConfig, GroupMap, Ix, SubgroupMask};
use crate::structure;

pub const DEFAULT_AUT_CAP: usize = 20_000;
pub const DEFAULT_END_CAP: usize = 200_000;

/// Largest key space for the dense product lookup in [`aut_as_group`].
const DENSE_KEY_LIMIT: usize = 1 << 22;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MapKind {
    Automorphisms,
    Endomorphisms,
}

/// A list of self-maps of one group.
///
/// When `complete` is false the list is a generating or sample set: orbits
/// and invariance are taken with respect to the monoid it generates.
#[derive(Clone, Debug)]
pub struct MapSet {
    pub kind: MapKind,
    pub maps: Vec<GroupMap>,
    pub complete: bool,
}

impl MapSet {
    pub fn new(kind: MapKind, maps: Vec<GroupMap>, complete: bool) -> Self {
        MapSet {
            kind,
            maps,
            complete,
        }
    }

    pub fn identity(n: usize) -> Self {
        MapSet::new(MapKind::Automorphisms, vec![GroupMap::identity(n)], false)
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    /// Whether every map sends `mask` into itself.
    pub fn preserves(&self, mask: &SubgroupMask) -> bool {
        self.maps.iter().all(|m| m.maps_into(mask))
    }
}

/// Options for the backtracking searches.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchOptions {
    /// Also match the class sizes of all powers of a generator (power-map
    /// fingerprint) when choosing automorphism candidates.
    pub power_fingerprints: bool,
}

#[derive(Debug)]
struct Level {
    /// `(c, a, j)`: `c = a * gens[j]`, `c` first reached here.
    defs: Vec<(u32, u32, u32)>,
    /// `(c, a, j)`: edge that must agree with the images already defined.
    checks: Vec<(u32, u32, u32)>,
}

/// Word expressions of every element over a generator sequence.
#[derive(Debug)]
pub struct Plan {
    gens: Vec<usize>,
    levels: Vec<Level>,
    covers: bool,
}

impl Plan {
    pub fn new(g: &FiniteGroup, gens: &[usize]) -> Plan {
        let n = g.order();
        let mut in_domain = FixedBitSet::with_capacity(n);
        in_domain.insert(0);
        let mut domain = vec![0usize];
        let mut levels = Vec::with_capacity(gens.len());
        for k in 0..gens.len() {
            let mut defs = Vec::new();
            let mut checks = Vec::new();
            // Old elements only need the new generator; new ones need all.
            let mut queue: VecDeque<(usize, bool)> = domain.iter().map(|&a| (a, false)).collect();
            while let Some((a, all)) = queue.pop_front() {
                let range = if all { 0..k + 1 } else { k..k + 1 };
                for j in range {
                    let c = g.mul(a, gens[j]);
                    let edge = (c as u32, a as u32, j as u32);
                    if in_domain.put(c) {
                        checks.push(edge);
                    } else {
                        defs.push(edge);
                        domain.push(c);
                        queue.push_back((c, true));
                    }
                }
            }
            levels.push(Level { defs, checks });
        }
        Plan {
            gens: gens.to_vec(),
            covers: domain.len() == n,
            levels,
        }
    }

    pub fn gens(&self) -> &[usize] {
        &self.gens
    }
}

struct Search<'a> {
    dst: &'a FiniteGroup,
    plan: &'a Plan,
    cands: &'a [Vec<usize>],
    injective: bool,
    img: Vec<Ix>,
    used: FixedBitSet,
    tgen: Vec<usize>,
}

impl<'a> Search<'a> {
    fn new(
        src: &FiniteGroup,
        dst: &'a FiniteGroup,
        plan: &'a Plan,
        cands: &'a [Vec<usize>],
        injective: bool,
    ) -> Self {
        let mut used = FixedBitSet::with_capacity(dst.order());
        used.insert(0);
        Search {
            dst,
            plan,
            cands,
            injective,
            img: vec![0; src.order()],
            used,
            tgen: vec![0; plan.gens.len()],
        }
    }

    fn undo_defs(&mut self, level: usize, count: usize) {
        if self.injective {
            for &(c, _, _) in &self.plan.levels[level].defs[..count] {
                self.used.set(self.img[c as usize] as usize, false);
            }
        }
    }

    fn apply(&mut self, level: usize, t: usize) -> bool {
        self.tgen[level] = t;
        let lv = &self.plan.levels[level];
        for (i, &(c, a, j)) in lv.defs.iter().enumerate() {
            let v = self
                .dst
                .mul(self.img[a as usize] as usize, self.tgen[j as usize]);
            if self.injective && self.used.put(v) {
                self.undo_defs(level, i);
                return false;
            }
            self.img[c as usize] = v as Ix;
        }
        for &(c, a, j) in &lv.checks {
            let v = self
                .dst
                .mul(self.img[a as usize] as usize, self.tgen[j as usize]);
            if self.img[c as usize] as usize != v {
                self.undo_defs(level, lv.defs.len());
                return false;
            }
        }
        true
    }

    fn run(
        &mut self,
        level: usize,
        visit: &mut dyn FnMut(&[Ix]) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        if level == self.plan.levels.len() {
            return visit(&self.img);
        }
        let cands = self.cands;
        for &t in &cands[level] {
            if self.apply(level, t) {
                let flow = self.run(level + 1, visit);
                self.undo_defs(level, self.plan.levels[level].defs.len());
                flow?;
            }
        }
        ControlFlow::Continue(())
    }
}

fn power_fingerprint(g: &FiniteGroup, x: usize) -> Vec<usize> {
    let k = g.element_order(x);
    (1..=k)
        .filter(|d| k % d == 0)
        .map(|d| g.class_size(g.pow(x, d)))
        .collect()
}

fn auto_candidates(g: &FiniteGroup, s: usize, opts: SearchOptions) -> Vec<usize> {
    let fp = opts.power_fingerprints.then(|| power_fingerprint(g, s));
    g.elements()
        .filter(|&t| g.element_order(t) == g.element_order(s) && g.class_size(t) == g.class_size(s))
        .filter(|&t| fp.as_ref().is_none_or(|fp| *fp == power_fingerprint(g, t)))
        .collect()
}

fn endo_candidates(g: &FiniteGroup, s: usize) -> Vec<usize> {
    let k = g.element_order(s);
    g.elements()
        .filter(|&t| k % g.element_order(t) == 0)
        .collect()
}

/// Greedy generating set: repeatedly add the least element maximising the
/// generated subgroup. Redundant elements are then dropped, and for
/// nilpotent groups the size is checked against the Burnside rank and
/// replaced by the lexicographically least minimum-size set if larger.
pub fn minimal_generating_set(g: &FiniteGroup) -> Vec<usize> {
    let n = g.order();
    let mut gens = Vec::new();
    let mut h = SubgroupMask::identity(n);
    while !h.is_full() {
        let mut best: Option<(usize, SubgroupMask)> = None;
        for x in g.elements().filter(|&x| !h.contains(x)) {
            let k = g.closure_with(&h, [x]);
            if best
                .as_ref()
                .is_none_or(|(_, b)| k.popcount() > b.popcount())
            {
                let done = k.is_full();
                best = Some((x, k));
                if done {
                    break;
                }
            }
        }
        let (x, k) = best.expect("proper subgroup has an outside element");
        gens.push(x);
        h = k;
    }
    let mut i = 0;
    while i < gens.len() && gens.len() > 1 {
        let rest: Vec<usize> = gens
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, &x)| x)
            .collect();
        if g.generate(rest.iter().copied()).is_full() {
            gens = rest;
        } else {
            i += 1;
        }
    }
    if gens.len() > 1 && structure::is_nilpotent(g) {
        let rank = structure::nilpotent_rank(g);
        if gens.len() > rank {
            if let Some(better) = least_generating_subset(g, rank) {
                return better;
            }
        }
    }
    gens
}

fn least_generating_subset(g: &FiniteGroup, size: usize) -> Option<Vec<usize>> {
    fn rec(
        g: &FiniteGroup,
        start: usize,
        size: usize,
        chosen: &mut Vec<usize>,
        h: &SubgroupMask,
    ) -> bool {
        if chosen.len() == size {
            return h.is_full();
        }
        for x in start..g.order() {
            if h.contains(x) {
                continue;
            }
            chosen.push(x);
            let k = g.closure_with(h, [x]);
            if rec(g, x + 1, size, chosen, &k) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    let mut chosen = Vec::new();
    rec(g, 1, size, &mut chosen, &SubgroupMask::identity(g.order())).then_some(chosen)
}

/// Cached search context for one group.
pub struct HomContext<'g> {
    g: &'g FiniteGroup,
    plan: Plan,
    opts: SearchOptions,
}

impl<'g> HomContext<'g> {
    pub fn new(g: &'g FiniteGroup) -> Self {
        Self::with_options(g, SearchOptions::default())
    }

    pub fn with_options(g: &'g FiniteGroup, opts: SearchOptions) -> Self {
        let gens = minimal_generating_set(g);
        let plan = Plan::new(g, &gens);
        debug_assert!(plan.covers);
        HomContext { g, plan, opts }
    }

    pub fn generators(&self) -> &[usize] {
        self.plan.gens()
    }

    fn candidates(&self, kind: MapKind) -> Vec<Vec<usize>> {
        self.plan
            .gens
            .iter()
            .map(|&s| match kind {
                MapKind::Automorphisms => auto_candidates(self.g, s, self.opts),
                MapKind::Endomorphisms => endo_candidates(self.g, s),
            })
            .collect()
    }

    fn enumerate(&self, kind: MapKind, cap: usize) -> Result<MapSet, MorphismError> {
        let cands = self.candidates(kind);
        let injective = kind == MapKind::Automorphisms;
        let mut search = Search::new(self.g, self.g, &self.plan, &cands, injective);
        let mut maps = Vec::new();
        let mut bad = false;
        let g = self.g;
        let flow = search.run(0, &mut |img| {
            let m = GroupMap::from_raw(img.to_vec(), g.order());
            if !m.is_homomorphism(g, g) || (injective && !m.is_bijective()) {
                bad = true;
                return ControlFlow::Break(());
            }
            maps.push(m);
            if maps.len() > cap {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        });
        assert!(!bad, "plan produced a non-homomorphism");
        if flow.is_break() {
            return Err(match kind {
                MapKind::Automorphisms => MorphismError::AutCapExceeded(maps.len()),
                MapKind::Endomorphisms => MorphismError::EndCapExceeded(maps.len()),
            });
        }
        Ok(MapSet::new(kind, maps, true))
    }

    pub fn automorphisms(&self, cap: usize) -> Result<MapSet, MorphismError> {
        self.enumerate(MapKind::Automorphisms, cap)
    }

    pub fn endomorphisms(&self, cap: usize) -> Result<MapSet, MorphismError> {
        self.enumerate(MapKind::Endomorphisms, cap)
    }

    /// Counts automorphisms without storing them.
    pub fn count_automorphisms(&self, cap: usize) -> Result<usize, MorphismError> {
        let cands = self.candidates(MapKind::Automorphisms);
        let mut search = Search::new(self.g, self.g, &self.plan, &cands, true);
        let mut count = 0usize;
        let flow = search.run(0, &mut |_| {
            count += 1;
            if count > cap {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        });
        if flow.is_break() {
            Err(MorphismError::AutCapExceeded(count))
        } else {
            Ok(count)
        }
    }

    /// Finds one map of the given kind sending `x` to `y`, if any exists.
    pub fn find_mapping(&self, kind: MapKind, x: usize, y: usize) -> Option<GroupMap> {
        let g = self.g;
        let ok = match kind {
            MapKind::Automorphisms => {
                g.element_order(x) == g.element_order(y)
                    && g.class_size(x) == g.class_size(y)
                    && (!self.opts.power_fingerprints
                        || power_fingerprint(g, x) == power_fingerprint(g, y))
            }
            MapKind::Endomorphisms => g.element_order(x) % g.element_order(y) == 0,
        };
        if !ok {
            return None;
        }
        let mut gens = vec![x];
        gens.extend_from_slice(&self.plan.gens);
        let plan = Plan::new(g, &gens);
        let mut cands = vec![vec![y]];
        cands.extend(self.candidates(kind));
        let injective = kind == MapKind::Automorphisms;
        let mut search = Search::new(g, g, &plan, &cands, injective);
        let mut found = None;
        let _ = search.run(0, &mut |img| {
            found = Some(GroupMap::from_raw(img.to_vec(), g.order()));
            ControlFlow::Break(())
        });
        found
    }
}

pub fn enumerate_automorphisms(g: &FiniteGroup, cap: usize) -> Result<MapSet, MorphismError> {
    HomContext::new(g).automorphisms(cap)
}

pub fn enumerate_endomorphisms(g: &FiniteGroup, cap: usize) -> Result<MapSet, MorphismError> {
    HomContext::new(g).endomorphisms(cap)
}

pub fn count_automorphisms(g: &FiniteGroup, cap: usize) -> Result<usize, MorphismError> {
    HomContext::new(g).count_automorphisms(cap)
}

/// Conjugation maps `x -> g^-1 x g`, deduplicated, in order of first `g`.
pub fn inner_automorphisms(g: &FiniteGroup) -> MapSet {
    let mut seen = rustc_hash::FxHashSet::default();
    let mut maps = Vec::new();
    for h in g.elements() {
        let m = GroupMap::new(g.elements().map(|x| g.conj(x, h)).collect(), g.order());
        if seen.insert(m.clone()) {
            maps.push(m);
        }
    }
    MapSet::new(MapKind::Automorphisms, maps, true)
}

/// `Aut(G)` (or any complete automorphism set closed under composition)
/// as an abstract group.
#[derive(Clone, Debug)]
pub struct AutGroup {
    pub group: FiniteGroup,
    /// `maps[i]` is the automorphism at element index `i`.
    pub maps: Vec<GroupMap>,
    key_gens: Vec<usize>,
    index: FxHashMap<Box<[Ix]>, u32>,
}

impl AutGroup {
    fn key(&self, m: &GroupMap) -> Vec<Ix> {
        self.key_gens.iter().map(|&s| m.apply(s) as Ix).collect()
    }

    pub fn index_of(&self, m: &GroupMap) -> Option<usize> {
        let idx = *self.index.get(&self.key(m)[..])? as usize;
        (self.maps[idx] == *m).then_some(idx)
    }
}

/// Cayley table of a complete automorphism set under composition, where
/// the product `a * b` applies `a` first. The identity map is index 0,
/// the remaining maps keep their order.
pub fn aut_as_group(g: &FiniteGroup, autos: &MapSet) -> Result<AutGroup, MorphismError> {
    aut_as_group_with(g, autos, &GroupConfig::default())
}

pub fn aut_as_group_with(
    g: &FiniteGroup,
    autos: &MapSet,
    cfg: &GroupConfig,
) -> Result<AutGroup, MorphismError> {
    if autos.kind != MapKind::Automorphisms {
        return Err(MorphismError::Incomplete);
    }
    let m = autos.maps.len();
    if m > cfg.max_order || m > crate::group::ORDER_CEILING {
        return Err(crate::error::GroupError::ProductExceedsCap {
            order: m,
            cap: cfg.max_order,
        }
        .into());
    }
    let id_pos = autos
        .maps
        .iter()
        .position(GroupMap::is_identity)
        .ok_or(MorphismError::Incomplete)?;
    let mut maps = Vec::with_capacity(m);
    maps.push(autos.maps[id_pos].clone());
    maps.extend(
        autos
            .maps
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != id_pos)
            .map(|(_, f)| f.clone()),
    );
    let key_gens = minimal_generating_set(g);
    let mut index: FxHashMap<Box<[Ix]>, u32> = FxHashMap::default();
    for (i, f) in maps.iter().enumerate() {
        let key: Box<[Ix]> = key_gens.iter().map(|&s| f.apply(s) as Ix).collect();
        if index.insert(key, i as u32).is_some() {
            return Err(MorphismError::Incomplete);
        }
    }
    // Products are looked up by the images of the key generators: in a
    // dense array when the key space is small, else by the images packed
    // into a u64 when they fit, else by the boxed key.
    let n = g.order();
    let bits = usize::BITS - (n - 1).leading_zeros();
    let lookup = if let Some(len) = key_gens
        .iter()
        .try_fold(1usize, |acc, _| acc.checked_mul(n))
        .filter(|&len| len <= DENSE_KEY_LIMIT)
    {
        let mut d = vec![u32::MAX; len];
        for (key, &i) in &index {
            d[key.iter().rev().fold(0, |acc, &y| acc * n + y as usize)] = i;
        }
        ProductLookup::Dense(d)
    } else if key_gens.len() as u32 * bits <= u64::BITS {
        ProductLookup::Packed(
            index
                .iter()
                .map(|(key, &i)| (pack(key.iter().map(|&y| y as usize), bits), i))
                .collect(),
        )
    } else {
        ProductLookup::Boxed
    };
    let mut buf: Vec<Ix> = vec![0; key_gens.len()];
    let mut first: Vec<usize> = vec![0; key_gens.len()];
    // Index of `a` followed by `b`.
    let mut compose = |a: usize, b: usize| -> Result<usize, MorphismError> {
        for (slot, &s) in first.iter_mut().zip(&key_gens) {
            *slot = maps[a].apply(s);
        }
        let img = maps[b].raw();
        let c = match &lookup {
            ProductLookup::Dense(d) => {
                d[first
                    .iter()
                    .rev()
                    .fold(0, |acc, &y| acc * n + img[y] as usize)]
            }
            ProductLookup::Packed(p) => *p
                .get(&pack(first.iter().map(|&y| img[y] as usize), bits))
                .ok_or(MorphismError::Incomplete)?,
            ProductLookup::Boxed => {
                for (slot, &y) in buf.iter_mut().zip(&first) {
                    *slot = img[y];
                }
                *index.get(&buf[..]).ok_or(MorphismError::Incomplete)?
            }
        };
        if c == u32::MAX {
            Err(MorphismError::Incomplete)
        } else {
            Ok(c as usize)
        }
    };
    // Generators of the listed set, the right-multiplication table by them,
    // and a spanning tree of its Cayley graph rooted at the identity. Every
    // row is then filled as a*b = (a*parent(b))*s along the tree.
    let mut gens: Vec<usize> = Vec::new();
    let mut tree: Vec<(usize, usize, usize)> = Vec::new();
    let mut reached = FixedBitSet::with_capacity(m);
    reached.insert(0);
    while let Some(next) = (0..m).find(|&i| !reached.contains(i)) {
        gens.push(next);
        reached.clear();
        reached.insert(0);
        tree.clear();
        let mut queue = vec![0];
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for (si, &s) in gens.iter().enumerate() {
                let y = compose(x, s)?;
                if !reached.put(y) {
                    tree.push((y, x, si));
                    queue.push(y);
                }
            }
        }
    }
    let k = gens.len();
    let mut right = vec![0u32; m * k];
    for x in 0..m {
        for (si, &s) in gens.iter().enumerate() {
            right[x * k + si] = compose(x, s)? as u32;
        }
    }
    let mut table: Vec<Ix> = vec![0; m * m];
    for (a, row) in table.chunks_exact_mut(m).enumerate() {
        row[0] = a as Ix;
        for &(b, parent, si) in &tree {
            row[b] = right[row[parent] as usize * k + si] as Ix;
        }
    }
    let group = FiniteGroup::from_table(m, table, cfg)?;
    Ok(AutGroup {
        group,
        maps,
        key_gens,
        index,
    })
}

enum ProductLookup {
    Dense(Vec<u32>),
    Packed(FxHashMap<u64, u32>),
    Boxed,
}

fn pack(images: impl Iterator<Item = usize>, bits: u32) -> u64 {
    images.fold(0u64, |acc, y| (acc << bits) | y as u64)
}

/// Least superset of `{x}` closed under every listed map.
pub fn orbit_closure(x: usize, maps: &MapSet) -> Vec<usize> {
    let n = maps.maps.first().map_or(x + 1, GroupMap::source_order);
    let mut seen = FixedBitSet::with_capacity(n.max(x + 1));
    seen.insert(x);
    let mut out = vec![x];
    let mut i = 0;
    while i < out.len() {
        let y = out[i];
        for m in &maps.maps {
            let z = m.apply(y);
            if !seen.put(z) {
                out.push(z);
            }
        }
        i += 1;
    }
    out.sort_unstable();
    out
}

/// `(a, b) -> (a, phi(a) b)` on `A x B` indexed as by `direct_product`.
pub fn psi_factory(
    a: &FiniteGroup,
    b: &FiniteGroup,
    phi: &GroupMap,
) -> Result<GroupMap, MorphismError> {
    if !phi.is_homomorphism(a, b) {
        return Err(MorphismError::NotHomomorphism);
    }
    let central = a.elements().all(|x| {
        b.elements()
            .all(|y| b.mul(phi.apply(x), y) == b.mul(y, phi.apply(x)))
    });
    if !central {
        return Err(MorphismError::NotCentral);
    }
    let nb = b.order();
    let images = (0..a.order() * nb)
        .map(|idx| {
            let (x, y) = (idx / nb, idx % nb);
            x * nb + b.mul(phi.apply(x), y)
        })
        .collect();
    Ok(GroupMap::new(images, a.order() * nb))
}

/// Source of invariant closures for chain searches: either a listed map
/// set or a lazy existence search over all automorphisms/endomorphisms.
pub trait OrbitSource {
    fn kind(&self) -> MapKind;
    /// The closure of `{x}` under the acting set.
    fn orbit(&mut self, x: usize) -> Vec<usize>;
    /// Maps that justify the orbits handed out so far.
    fn witness(&self) -> MapSet;
}

/// Orbits under a listed [`MapSet`].
pub struct ListedMaps<'m> {
    maps: &'m MapSet,
    /// Distinct images `f(x)` over all listed maps, built on first use.
    images: Option<Vec<Vec<usize>>>,
    cache: FxHashMap<usize, Vec<usize>>,
}

impl<'m> ListedMaps<'m> {
    pub fn new(maps: &'m MapSet) -> Self {
        ListedMaps {
            maps,
            images: None,
            cache: FxHashMap::default(),
        }
    }

    fn images(&mut self) -> &[Vec<usize>] {
        let maps = self.maps;
        self.images.get_or_insert_with(|| {
            let n = maps.maps.first().map_or(0, GroupMap::source_order);
            let mut seen = FixedBitSet::with_capacity(n * n);
            let mut out = vec![Vec::new(); n];
            for f in &maps.maps {
                for (x, &y) in f.raw().iter().enumerate() {
                    if !seen.put(x * n + y as usize) {
                        out[x].push(y as usize);
                    }
                }
            }
            out
        })
    }
}

impl OrbitSource for ListedMaps<'_> {
    fn kind(&self) -> MapKind {
        self.maps.kind
    }

    fn orbit(&mut self, x: usize) -> Vec<usize> {
        if let Some(orbit) = self.cache.get(&x) {
            return orbit.clone();
        }
        let images = self.images();
        let mut seen = FixedBitSet::with_capacity(images.len().max(x + 1));
        seen.insert(x);
        let mut orbit = vec![x];
        let mut i = 0;
        while i < orbit.len() {
            for &z in images.get(orbit[i]).map_or(&[][..], Vec::as_slice) {
                if !seen.put(z) {
                    orbit.push(z);
                }
            }
            i += 1;
        }
        orbit.sort_unstable();
        self.cache.insert(x, orbit.clone());
        orbit
    }

    fn witness(&self) -> MapSet {
        self.maps.clone()
    }
}

/// Orbits under all of `Aut(G)` or `End(G)` found without enumerating the
/// whole set: for each candidate image a single constrained search decides
/// whether some map sends `x` there. Found maps are kept and reused.
pub struct ExistenceOrbits<'g> {
    ctx: HomContext<'g>,
    kind: MapKind,
    found: Vec<GroupMap>,
    cache: FxHashMap<usize, Vec<usize>>,
}

impl<'g> ExistenceOrbits<'g> {
    pub fn new(g: &'g FiniteGroup, kind: MapKind) -> Self {
        ExistenceOrbits {
            ctx: HomContext::new(g),
            kind,
            found: Vec::new(),
            cache: FxHashMap::default(),
        }
    }

    fn closure(&self, seed: &[usize]) -> FixedBitSet {
        let n = self.ctx.g.order();
        let mut seen = FixedBitSet::with_capacity(n);
        let mut stack: Vec<usize> = seed.to_vec();
        for &s in seed {
            seen.insert(s);
        }
        while let Some(y) = stack.pop() {
            for m in &self.found {
                let z = m.apply(y);
                if !seen.put(z) {
                    stack.push(z);
                }
            }
        }
        seen
    }
}

impl OrbitSource for ExistenceOrbits<'_> {
    fn kind(&self) -> MapKind {
        self.kind
    }

    fn orbit(&mut self, x: usize) -> Vec<usize> {
        if let Some(o) = self.cache.get(&x) {
            return o.clone();
        }
        let g = self.ctx.g;
        let mut reach = self.closure(&[x]);
        let mut excluded = FixedBitSet::with_capacity(g.order());
        for y in g.elements() {
            if reach.contains(y) || excluded.contains(y) {
                continue;
            }
            match self.ctx.find_mapping(self.kind, x, y) {
                Some(m) => {
                    self.found.push(m);
                    let seed: Vec<usize> = reach.ones().collect();
                    reach = self.closure(&seed);
                }
                None => {
                    if self.kind == MapKind::Automorphisms {
                        // Automorphic images of y are outside the orbit too.
                        excluded.union_with(&self.closure(&[y]));
                    } else {
                        excluded.insert(y);
                    }
                }
            }
        }
        let orbit: Vec<usize> = reach.ones().collect();
        if self.kind == MapKind::Automorphisms {
            for &y in &orbit {
                self.cache.insert(y, orbit.clone());
            }
        } else {
            self.cache.insert(x, orbit.clone());
        }
        orbit
    }

    fn witness(&self) -> MapSet {
        MapSet::new(self.kind, self.found.clone(), false)
    }
}
