//! Full enumeration of a Weyl group and the subgroup machinery built on it:
//! parabolic subgroups and transversals, normalizer complements, conjugacy
//! classes, centralizers, fixed spaces and cuspidal classes.
//!
//! Elements are referred to by [`ElemId`], their serial number in the
//! enumeration. Subgroups are sets of ids.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use fixedbitset::FixedBitSet;
use hashbrown::HashMap;

use crate::error::{Error, Result};
use crate::linalg;
use crate::rootsys::{CoxeterDatum, CoxeterType, Element};
use crate::Rational;

pub type ElemId = u32;

/// Largest group [`GroupBox::new`] agrees to enumerate.
pub const ENUMERATION_LIMIT: usize = 100_000;

const MAX_RANK: usize = 8;
type Key = [u8; MAX_RANK];

/// A fully enumerated Weyl group with a hash index element → id.
#[derive(Debug, Clone)]
pub struct GroupBox {
    datum: CoxeterDatum,
    n_pos: usize,
    rank: usize,
    perms: Vec<u8>,
    lengths: Vec<u16>,
    descents: Vec<u8>,
    inverse: Vec<ElemId>,
    index: HashMap<Key, ElemId>,
    gens: Vec<ElemId>,
}

impl GroupBox {
    pub fn new(datum: CoxeterDatum) -> Result<Self> {
        Self::with_limit(datum, ENUMERATION_LIMIT)
    }

    pub fn with_limit(datum: CoxeterDatum, limit: usize) -> Result<Self> {
        let rank = datum.rank();
        let n_pos = datum.num_positive();
        if rank > MAX_RANK {
            return Err(Error::UnsupportedType { family: '?', rank });
        }
        let mut gb = GroupBox {
            n_pos,
            rank,
            perms: Vec::new(),
            lengths: Vec::new(),
            descents: Vec::new(),
            inverse: Vec::new(),
            index: HashMap::new(),
            gens: Vec::new(),
            datum,
        };
        gb.push(gb.datum.identity());
        let simple: Vec<Element> = gb.datum.simple_reflections().to_vec();
        let mut head = 0usize;
        while head < gb.lengths.len() {
            let cur = gb.element(head as ElemId);
            for s in &simple {
                let next = cur.compose(s);
                if !gb.index.contains_key(&gb.key_of(&next)) {
                    if gb.lengths.len() >= limit {
                        return Err(Error::GroupTooLarge { order: gb.lengths.len() + 1, limit });
                    }
                    gb.push(next);
                }
            }
            head += 1;
        }
        gb.gens = simple.iter().map(|s| gb.id_of(s).unwrap()).collect();
        gb.inverse = (0..gb.order() as ElemId)
            .map(|i| gb.id_of(&gb.element(i).inverse()).unwrap())
            .collect();
        Ok(gb)
    }

    /// Convenience constructor from a family and rank.
    pub fn of_type(family: CoxeterType, rank: usize) -> Result<Self> {
        Self::new(CoxeterDatum::new(family, rank)?)
    }

    fn key_of(&self, e: &Element) -> Key {
        let mut k = [0u8; MAX_RANK];
        for (i, slot) in k.iter_mut().enumerate().take(self.rank) {
            *slot = e.image(i) as u8;
        }
        k
    }

    fn push(&mut self, e: Element) {
        let id = self.lengths.len() as ElemId;
        self.index.insert(self.key_of(&e), id);
        self.lengths.push(e.length() as u16);
        self.descents.push(self.datum.descent_mask(&e) as u8);
        self.perms.extend_from_slice(e.positive_images());
    }

    pub fn datum(&self) -> &CoxeterDatum {
        &self.datum
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn order(&self) -> usize {
        self.lengths.len()
    }

    pub fn identity(&self) -> ElemId {
        0
    }

    pub fn generators(&self) -> &[ElemId] {
        &self.gens
    }

    pub fn generator(&self, i: usize) -> ElemId {
        self.gens[i]
    }

    /// Image of root index `root` (in `0..2N`) under element `id`.
    #[inline]
    pub fn image(&self, id: ElemId, root: usize) -> usize {
        let base = id as usize * self.n_pos;
        if root < self.n_pos {
            self.perms[base + root] as usize
        } else {
            let j = self.perms[base + root - self.n_pos] as usize;
            if j < self.n_pos {
                j + self.n_pos
            } else {
                j - self.n_pos
            }
        }
    }

    pub fn positive_images(&self, id: ElemId) -> &[u8] {
        let base = id as usize * self.n_pos;
        &self.perms[base..base + self.n_pos]
    }

    pub fn element(&self, id: ElemId) -> Element {
        Element::from_perm(self.positive_images(id).to_vec())
    }

    pub fn id_of(&self, e: &Element) -> Option<ElemId> {
        self.index.get(&self.key_of(e)).copied()
    }

    /// `a` followed by `b`.
    #[inline]
    pub fn mul(&self, a: ElemId, b: ElemId) -> ElemId {
        let mut k = [0u8; MAX_RANK];
        for (i, slot) in k.iter_mut().enumerate().take(self.rank) {
            *slot = self.image(b, self.image(a, i)) as u8;
        }
        self.index[&k]
    }

    #[inline]
    pub fn inv(&self, a: ElemId) -> ElemId {
        self.inverse[a as usize]
    }

    /// `g^{-1} x g`.
    #[inline]
    pub fn conj(&self, x: ElemId, g: ElemId) -> ElemId {
        self.mul(self.mul(self.inv(g), x), g)
    }

    pub fn commutes(&self, a: ElemId, b: ElemId) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn length(&self, id: ElemId) -> usize {
        self.lengths[id as usize] as usize
    }

    /// Left descent set `{i : l(s_i w) < l(w)}` as a bitmask.
    #[inline]
    pub fn descent_mask(&self, id: ElemId) -> u32 {
        self.descents[id as usize] as u32
    }

    /// Right descent set `{i : l(w s_i) < l(w)}` as a bitmask.
    pub fn right_descent_mask(&self, id: ElemId) -> u32 {
        self.descent_mask(self.inv(id))
    }

    pub fn element_order(&self, id: ElemId) -> usize {
        let mut k = 1;
        let mut p = id;
        while p != 0 {
            p = self.mul(p, id);
            k += 1;
        }
        k
    }

    pub fn from_word(&self, word: &[usize]) -> Result<ElemId> {
        let mut w = self.identity();
        for &i in word {
            if i >= self.rank {
                return Err(Error::GeneratorOutOfRange { index: i, rank: self.rank });
            }
            w = self.mul(w, self.gens[i]);
        }
        Ok(w)
    }

    /// Lexicographically least reduced word.
    pub fn word(&self, id: ElemId) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.length(id));
        let mut cur = id;
        while cur != 0 {
            let d = self.descent_mask(cur);
            let i = d.trailing_zeros() as usize;
            out.push(i);
            cur = self.mul(self.gens[i], cur);
        }
        out
    }

    pub fn format(&self, id: ElemId) -> String {
        self.datum.format_word(&self.word(id))
    }

    /// Orders ids by length, then by lexicographically least reduced word.
    pub fn cmp_elements(&self, a: ElemId, b: ElemId) -> Ordering {
        self.length(a)
            .cmp(&self.length(b))
            .then_with(|| if a == b { Ordering::Equal } else { self.word(a).cmp(&self.word(b)) })
    }

    pub fn longest_element(&self) -> ElemId {
        (0..self.order() as ElemId).max_by_key(|&i| self.length(i)).unwrap()
    }

    /// Longest element of the standard parabolic subgroup on `subset`.
    pub fn longest_in(&self, subset: &[usize]) -> Result<ElemId> {
        let mut w = self.identity();
        loop {
            let next = subset.iter().find(|&&s| self.length(self.mul(w, self.gens[s])) > self.length(w));
            match next {
                Some(&s) => w = self.mul(w, self.gens[s]),
                None => return Ok(w),
            }
        }
    }

    /// Reflection attached to positive root `root`.
    pub fn reflection(&self, root: usize) -> Result<ElemId> {
        let e = self.datum.reflection_for_root(root)?;
        Ok(self.id_of(&e).unwrap())
    }

    /// Matrix of the right action on V in the simple-root basis.
    pub fn matrix(&self, id: ElemId) -> Vec<Vec<i64>> {
        (0..self.rank).map(|i| self.datum.root_vector(self.image(id, i))).collect()
    }

    /// `det(w)` on V.
    pub fn determinant(&self, id: ElemId) -> Rational {
        let m = linalg::from_ints(&self.matrix(id));
        linalg::determinant(&m)
    }

    /// Elements of `W_L` with `D(x) ∩ J = ∅`: minimal representatives of
    /// the cosets `W_J x` in `W_L`.
    pub fn parabolic_transversal(&self, l_group: &Subgroup, j_subset: &[usize], l_subset: &[usize]) -> Result<Vec<ElemId>> {
        check_subset(j_subset, l_subset)?;
        let mask = subset_mask(j_subset);
        Ok(l_group.elements().iter().copied().filter(|&x| self.descent_mask(x) & mask == 0).collect())
    }

    /// Writes `w = x u` with `u ∈ W_L`, `x` of minimal length in `x W_L` and
    /// `l(w) = l(x) + l(u)`.
    pub fn parabolic_coordinates(&self, w: ElemId, l_subset: &[usize]) -> (ElemId, ElemId) {
        let mut x = w;
        loop {
            let step = l_subset.iter().find(|&&s| self.right_descent_mask(x) & (1 << s) != 0);
            match step {
                Some(&s) => x = self.mul(x, self.gens[s]),
                None => break,
            }
        }
        let u = self.mul(self.inv(x), w);
        (x, u)
    }

    /// Elements permuting the simple roots of `L` among themselves; these are
    /// exactly the minimal coset representatives normalizing `W_L`.
    pub fn normalizer_complement(&self, l_subset: &[usize]) -> Vec<ElemId> {
        (0..self.order() as ElemId)
            .filter(|&w| l_subset.iter().all(|&l| l_subset.contains(&self.image(w, l))))
            .collect()
    }

    /// `N_W(W_L)` is the direct product `W_L x N_L`.
    pub fn is_bulky(&self, l_subset: &[usize]) -> bool {
        let nl = self.normalizer_complement(l_subset);
        nl.iter().all(|&n| l_subset.iter().all(|&s| self.commutes(n, self.gens[s])))
    }

    /// Basis (as rows) of the common fixed space of the given elements under
    /// the right action on V.
    pub fn fixed_space(&self, elements: &[ElemId]) -> Vec<Vec<Rational>> {
        let n = self.rank;
        let mut rows: linalg::Matrix = Vec::new();
        for &w in elements {
            let g = self.matrix(w);
            // v (G - I) = 0  <=>  (G - I)^T v^T = 0
            for j in 0..n {
                rows.push(
                    (0..n)
                        .map(|i| Rational::from_integer((g[i][j] - if i == j { 1 } else { 0 }) as i128))
                        .collect(),
                );
            }
        }
        if rows.is_empty() {
            return linalg::identity(n);
        }
        linalg::kernel(&rows, n)
    }

    /// Determinant of `w` restricted to the subspace spanned by `basis`.
    pub fn restricted_determinant(&self, w: ElemId, basis: &[Vec<Rational>]) -> Result<Rational> {
        if basis.is_empty() {
            return Ok(Rational::from_integer(1));
        }
        let g = linalg::from_ints(&self.matrix(w));
        let images = linalg::mul(&basis.to_vec(), &g);
        let coords: Vec<Vec<Rational>> = images
            .iter()
            .map(|img| linalg::solve_row(&basis.to_vec(), img).ok_or(Error::NotInvariant))
            .collect::<Result<_>>()?;
        Ok(linalg::determinant(&coords))
    }

    /// Whether `w ∈ W_L` has no nonzero fixed vector in the span of the
    /// simple roots of `L`.
    pub fn is_cuspidal_in(&self, w: ElemId, l_subset: &[usize]) -> bool {
        self.fixed_space(&[w]).len() == self.rank - l_subset.len()
    }
}

pub fn subset_mask(subset: &[usize]) -> u32 {
    subset.iter().fold(0, |m, &i| m | (1 << i))
}

pub fn mask_to_subset(mask: u32) -> Vec<usize> {
    (0..32).filter(|&i| mask & (1 << i) != 0).collect()
}

fn check_subset(sub: &[usize], sup: &[usize]) -> Result<()> {
    if sub.iter().all(|x| sup.contains(x)) {
        Ok(())
    } else {
        Err(Error::NotASubset { sub: sub.to_vec(), sup: sup.to_vec() })
    }
}

/// A subgroup of an enumerated group, stored as a sorted id list with a
/// membership bitset.
#[derive(Debug, Clone)]
pub struct Subgroup {
    elems: Vec<ElemId>,
    member: FixedBitSet,
    gens: Vec<ElemId>,
}

impl Subgroup {
    pub fn full(gb: &GroupBox) -> Self {
        let mut member = FixedBitSet::with_capacity(gb.order());
        member.insert_range(..);
        Subgroup { elems: (0..gb.order() as ElemId).collect(), member, gens: gb.generators().to_vec() }
    }

    pub fn generated(gb: &GroupBox, gens: &[ElemId]) -> Self {
        let member = closure(gb, gens);
        let elems = member.ones().map(|i| i as ElemId).collect();
        Subgroup { elems, member, gens: gens.to_vec() }
    }

    /// Standard parabolic subgroup `W_L`.
    pub fn parabolic(gb: &GroupBox, subset: &[usize]) -> Self {
        let gens: Vec<ElemId> = subset.iter().map(|&i| gb.generator(i)).collect();
        Self::generated(gb, &gens)
    }

    /// Wraps a set already known to be a subgroup and extracts a small
    /// generating set greedily.
    pub fn from_elements(gb: &GroupBox, mut elems: Vec<ElemId>) -> Self {
        elems.sort_unstable();
        elems.dedup();
        let mut member = FixedBitSet::with_capacity(gb.order());
        for &e in &elems {
            member.insert(e as usize);
        }
        let gens = greedy_generators(gb, &elems);
        Subgroup { elems, member, gens }
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    pub fn elements(&self) -> &[ElemId] {
        &self.elems
    }

    pub fn generators(&self) -> &[ElemId] {
        &self.gens
    }

    #[inline]
    pub fn contains(&self, id: ElemId) -> bool {
        self.member.contains(id as usize)
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.member.is_subset(&other.member)
    }

    /// `C_H(w)` for this subgroup `H`.
    pub fn centralizer(&self, gb: &GroupBox, w: ElemId) -> Subgroup {
        let elems = self.elems.iter().copied().filter(|&z| gb.commutes(z, w)).collect();
        Subgroup::from_elements(gb, elems)
    }

    pub fn intersection(&self, gb: &GroupBox, other: &Subgroup) -> Subgroup {
        let elems = self.elems.iter().copied().filter(|&z| other.contains(z)).collect();
        Subgroup::from_elements(gb, elems)
    }

    /// Replaces the generating set; fails unless the new set generates the
    /// same subgroup.
    pub fn with_generators(&self, gb: &GroupBox, gens: &[ElemId]) -> Result<Subgroup> {
        if gens.iter().any(|&g| !self.contains(g)) {
            return Err(Error::NotAMember);
        }
        let c = closure(gb, gens);
        let got = c.count_ones(..);
        if got != self.order() {
            return Err(Error::NotGenerating { got, expected: self.order() });
        }
        Ok(Subgroup { elems: self.elems.clone(), member: self.member.clone(), gens: gens.to_vec() })
    }

    /// Conjugacy classes of this subgroup.
    pub fn classes(&self, gb: &GroupBox) -> Classes {
        conjugacy_classes(gb, self)
    }

    /// The normal closure of the commutators of the generators.
    pub fn derived_subgroup(&self, gb: &GroupBox) -> Subgroup {
        let mut seeds = Vec::new();
        for &a in &self.gens {
            for &b in &self.gens {
                let c = gb.mul(gb.mul(gb.inv(a), gb.inv(b)), gb.mul(a, b));
                if c != 0 && !seeds.contains(&c) {
                    seeds.push(c);
                }
            }
        }
        let mut member = closure(gb, &seeds);
        loop {
            let mut extra = Vec::new();
            for x in member.ones() {
                for &g in &self.gens {
                    let y = gb.conj(x as ElemId, g);
                    if !member.contains(y as usize) {
                        extra.push(y);
                    }
                }
            }
            if extra.is_empty() {
                break;
            }
            let mut all: Vec<ElemId> = member.ones().map(|i| i as ElemId).collect();
            all.extend(extra);
            member = closure(gb, &all);
        }
        let elems = member.ones().map(|i| i as ElemId).collect();
        Subgroup { elems, member, gens: seeds }
    }
}

fn closure(gb: &GroupBox, gens: &[ElemId]) -> FixedBitSet {
    let mut member = FixedBitSet::with_capacity(gb.order());
    member.insert(0);
    let mut queue = vec![0 as ElemId];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for &g in gens {
            let y = gb.mul(x, g);
            if !member.contains(y as usize) {
                member.insert(y as usize);
                queue.push(y);
            }
        }
    }
    member
}

fn greedy_generators(gb: &GroupBox, elems: &[ElemId]) -> Vec<ElemId> {
    let mut order: Vec<ElemId> = elems.iter().copied().filter(|&e| e != 0).collect();
    order.sort_by_key(|&e| (gb.length(e), e));
    let mut gens = Vec::new();
    let mut have = closure(gb, &gens);
    let target = elems.len();
    for e in order {
        if have.count_ones(..) == target {
            break;
        }
        if !have.contains(e as usize) {
            gens.push(e);
            have = closure(gb, &gens);
        }
    }
    gens
}

/// Conjugacy classes of a subgroup, in deterministic order: by element
/// order, then class size, then representative (shortest element, ties by
/// lexicographically least reduced word).
#[derive(Debug, Clone)]
pub struct Classes {
    reps: Vec<ElemId>,
    sizes: Vec<usize>,
    orders: Vec<usize>,
    members: Vec<Vec<ElemId>>,
    class_of: HashMap<ElemId, u32>,
    group_order: usize,
}

pub fn conjugacy_classes(gb: &GroupBox, h: &Subgroup) -> Classes {
    let mut class_of_tmp: HashMap<ElemId, u32> = HashMap::with_capacity(h.order());
    let mut raw: Vec<Vec<ElemId>> = Vec::new();
    for &x in h.elements() {
        if class_of_tmp.contains_key(&x) {
            continue;
        }
        let id = raw.len() as u32;
        let mut orbit = vec![x];
        class_of_tmp.insert(x, id);
        let mut head = 0;
        while head < orbit.len() {
            let y = orbit[head];
            head += 1;
            for &g in h.generators() {
                let z = gb.conj(y, g);
                if !class_of_tmp.contains_key(&z) {
                    class_of_tmp.insert(z, id);
                    orbit.push(z);
                }
            }
        }
        raw.push(orbit);
    }
    let mut info: Vec<(usize, usize, Vec<usize>, ElemId, Vec<ElemId>)> = raw
        .into_iter()
        .map(|mut members| {
            members.sort_unstable();
            let min_len = members.iter().map(|&m| gb.length(m)).min().unwrap();
            let rep = members
                .iter()
                .copied()
                .filter(|&m| gb.length(m) == min_len)
                .min_by_key(|&m| gb.word(m))
                .unwrap();
            (gb.element_order(rep), members.len(), gb.word(rep), rep, members)
        })
        .collect();
    info.sort_by(|a, b| (a.0, a.1, a.2.len(), &a.2).cmp(&(b.0, b.1, b.2.len(), &b.2)));
    let mut class_of = HashMap::with_capacity(h.order());
    let mut reps = Vec::new();
    let mut sizes = Vec::new();
    let mut orders = Vec::new();
    let mut members_out = Vec::new();
    for (k, (ord, size, _, rep, members)) in info.into_iter().enumerate() {
        for &m in &members {
            class_of.insert(m, k as u32);
        }
        reps.push(rep);
        sizes.push(size);
        orders.push(ord);
        members_out.push(members);
    }
    Classes { reps, sizes, orders, members: members_out, class_of, group_order: h.order() }
}

impl Classes {
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn reps(&self) -> &[ElemId] {
        &self.reps
    }

    pub fn rep(&self, k: usize) -> ElemId {
        self.reps[k]
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn size(&self, k: usize) -> usize {
        self.sizes[k]
    }

    pub fn orders(&self) -> &[usize] {
        &self.orders
    }

    pub fn members(&self, k: usize) -> &[ElemId] {
        &self.members[k]
    }

    pub fn group_order(&self) -> usize {
        self.group_order
    }

    /// Order of the centralizer of an element of class `k`.
    pub fn centralizer_order(&self, k: usize) -> usize {
        self.group_order / self.sizes[k]
    }

    pub fn class_of(&self, id: ElemId) -> Option<usize> {
        self.class_of.get(&id).map(|&k| k as usize)
    }

    /// Labels made of the element order and a letter, e.g. `2a`, `2b`, `6a`.
    pub fn labels(&self) -> Vec<String> {
        let mut seen: HashMap<usize, usize> = HashMap::new();
        self.orders
            .iter()
            .map(|&o| {
                let c = seen.entry(o).or_insert(0);
                let k = *c;
                *c += 1;
                let mut s = alloc::format!("{o}");
                letters(k, &mut s);
                s
            })
            .collect()
    }
}

fn letters(mut k: usize, out: &mut String) {
    let mut buf = Vec::new();
    loop {
        buf.push((b'a' + (k % 26) as u8) as char);
        if k < 26 {
            break;
        }
        k = k / 26 - 1;
    }
    out.extend(buf.into_iter().rev());
}

/// Map from the classes of `h` to the classes of `g` (which must contain `h`).
pub fn class_fusion(h_classes: &Classes, g_classes: &Classes) -> Result<Vec<usize>> {
    h_classes.reps().iter().map(|&r| g_classes.class_of(r).ok_or(Error::NotAMember)).collect()
}

/// A standard parabolic subgroup with its root sub-datum and index maps.
#[derive(Debug, Clone)]
pub struct Parabolic {
    pub subset: Vec<usize>,
    pub group: Subgroup,
    pub datum: CoxeterDatum,
    /// Positive roots of `W_L` → positive roots of `W`.
    pub inclusion: Vec<usize>,
    /// Positive roots of `W` → positive roots of `W_L`, where defined.
    pub restriction: Vec<Option<usize>>,
}

impl Parabolic {
    pub fn new(gb: &GroupBox, subset: &[usize]) -> Result<Self> {
        let mut subset = subset.to_vec();
        subset.sort_unstable();
        subset.dedup();
        if let Some(&bad) = subset.iter().find(|&&i| i >= gb.rank()) {
            return Err(Error::GeneratorOutOfRange { index: bad, rank: gb.rank() });
        }
        let group = Subgroup::parabolic(gb, &subset);
        let (datum, inclusion) = gb.datum().parabolic(&subset)?;
        let mut restriction = vec![None; gb.datum().num_positive()];
        for (k, &r) in inclusion.iter().enumerate() {
            restriction[r] = Some(k);
        }
        Ok(Parabolic { subset, group, datum, inclusion, restriction })
    }

    pub fn mask(&self) -> u32 {
        subset_mask(&self.subset)
    }

    /// `N_W(W_L) = W_L ⋊ N_L` together with `N_L`.
    pub fn normalizer(&self, gb: &GroupBox) -> (Subgroup, Vec<ElemId>) {
        let nl = gb.normalizer_complement(&self.subset);
        let mut elems = Vec::with_capacity(self.group.order() * nl.len());
        for &u in self.group.elements() {
            for &n in &nl {
                elems.push(gb.mul(u, n));
            }
        }
        let mut gens: Vec<ElemId> = self.subset.iter().map(|&i| gb.generator(i)).collect();
        let extra = greedy_generators(gb, &nl);
        gens.extend(extra);
        elems.sort_unstable();
        elems.dedup();
        let mut member = FixedBitSet::with_capacity(gb.order());
        for &e in &elems {
            member.insert(e as usize);
        }
        (Subgroup { elems, member, gens }, nl)
    }

    /// Representatives of the cuspidal classes of `W_L` (in `W_L`'s class
    /// order).
    pub fn cuspidal_classes(&self, gb: &GroupBox) -> Vec<ElemId> {
        let cl = self.group.classes(gb);
        cl.reps().iter().copied().filter(|&w| gb.is_cuspidal_in(w, &self.subset)).collect()
    }
}

/// The cuspidal representative of `W(B_n)` labelled by a partition, with the
/// standard generating set of its centralizer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BnCuspidal {
    /// Parts in non-decreasing order.
    pub partition: Vec<usize>,
    /// Words (internal indices) of the negative cycles `c_1, ..., c_k`.
    pub cycles: Vec<Vec<usize>>,
    /// Word of `w_λ = c_1 ... c_k`.
    pub rep_word: Vec<usize>,
    /// Named generators of the centralizer: `c_{m(j)}` for every part `j`,
    /// then `x_i` whenever `λ_i = λ_{i+1}`.
    pub generators: Vec<(String, Vec<usize>)>,
}

/// Builds `w_λ` and the centralizer generators in `W(B_n)`.
pub fn bn_cuspidal_rep(n: usize, partition: &[usize]) -> Result<BnCuspidal> {
    let mut parts = partition.to_vec();
    if parts.iter().any(|&p| p == 0) || parts.iter().sum::<usize>() != n {
        return Err(Error::NotAPartition(alloc::format!("{partition:?}"), n));
    }
    parts.sort_unstable();
    let mut cycles = Vec::new();
    let mut j = 0usize;
    for &p in &parts {
        // (j+1) j ... 2 1 2 ... (j+p), as 1-based labels
        let mut word: Vec<usize> = (1..=j + 1).rev().collect();
        word.extend(2..=j + p);
        cycles.push(word.into_iter().map(|l| l - 1).collect::<Vec<_>>());
        j += p;
    }
    let rep_word: Vec<usize> = cycles.iter().flatten().copied().collect();
    let mut generators = Vec::new();
    for (i, &p) in parts.iter().enumerate() {
        if i == 0 || parts[i - 1] != p {
            generators.push((alloc::format!("c{}", i + 1), cycles[i].clone()));
        }
    }
    let mut j = 0usize;
    for i in 0..parts.len() {
        j += parts[i];
        if i + 1 < parts.len() && parts[i] == parts[i + 1] {
            let p = parts[i];
            let mut word = Vec::new();
            for k in 1..=p {
                for t in (j + k + 1 - p..=j + k).rev() {
                    word.push(t - 1);
                }
            }
            generators.push((alloc::format!("x{}", i + 1), word));
        }
    }
    Ok(BnCuspidal { partition: parts, cycles, rep_word, generators })
}

/// Partitions of `n` in non-decreasing order.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn rec(rem: usize, min: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rem == 0 {
            out.push(cur.clone());
            return;
        }
        for p in min..=rem {
            cur.push(p);
            rec(rem - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, 1, &mut Vec::new(), &mut out);
    out
}

/// The injective homomorphism `W(D_n) → W(B_n)` with `1' ↦ 121` and
/// `k ↦ k` for `k ≥ 2`, tabulated on all elements.
pub fn dn_into_bn(dbox: &GroupBox, bbox: &GroupBox) -> Result<Vec<ElemId>> {
    let n = dbox.rank();
    if bbox.rank() != n {
        return Err(Error::Other("rank mismatch between D_n and B_n".into()));
    }
    let mut gen_img = Vec::with_capacity(n);
    gen_img.push(bbox.from_word(&[0, 1, 0])?);
    for k in 1..n {
        gen_img.push(bbox.generator(k));
    }
    let mut img = vec![u32::MAX; dbox.order()];
    img[0] = 0;
    let mut queue = vec![0 as ElemId];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for (k, &g) in dbox.generators().iter().enumerate() {
            let y = dbox.mul(x, g);
            if img[y as usize] == u32::MAX {
                img[y as usize] = bbox.mul(img[x as usize], gen_img[k]);
                queue.push(y);
            }
        }
    }
    Ok(img)
}

/// A cuspidal class of `W(D_n)` obtained from a `B_n` partition with an even
/// number of parts.
#[derive(Debug, Clone)]
pub struct DnCuspidal {
    pub partition: Vec<usize>,
    pub element: ElemId,
    pub word: Vec<usize>,
    pub centralizer: Subgroup,
}

/// Cuspidal representatives of `W(D_n)` transported from `W(B_n)`, with
/// their centralizers computed in `W(D_n)`.
pub fn dn_cuspidal_reps(dbox: &GroupBox, bbox: &GroupBox) -> Result<Vec<DnCuspidal>> {
    let n = dbox.rank();
    let emb = dn_into_bn(dbox, bbox)?;
    let mut back: HashMap<ElemId, ElemId> = HashMap::with_capacity(emb.len());
    for (d, &b) in emb.iter().enumerate() {
        back.insert(b, d as ElemId);
    }
    let all = Subgroup::full(dbox);
    let mut out = Vec::new();
    for parts in partitions(n) {
        if parts.len() % 2 != 0 {
            continue;
        }
        let b = bn_cuspidal_rep(n, &parts)?;
        let wb = bbox.from_word(&b.rep_word)?;
        let &wd = back.get(&wb).ok_or(Error::Other("w_λ is not in W(D_n)".into()))?;
        out.push(DnCuspidal {
            partition: parts,
            element: wd,
            word: dbox.word(wd),
            centralizer: all.centralizer(dbox, wd),
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::CoxeterType::*;

    fn boxed(t: CoxeterType, n: usize) -> GroupBox {
        GroupBox::of_type(t, n).unwrap()
    }

    #[test]
    fn group_orders() {
        assert_eq!(boxed(A, 2).order(), 6);
        assert_eq!(boxed(B, 2).order(), 8);
        assert_eq!(boxed(A, 4).order(), 120);
        assert_eq!(boxed(B, 4).order(), 384);
        assert_eq!(boxed(D, 4).order(), 192);
        assert_eq!(boxed(B, 5).order(), 3840);
        assert_eq!(boxed(D, 5).order(), 1920);
    }

    #[test]
    fn enumeration_limit() {
        let d = CoxeterDatum::new(B, 5).unwrap();
        assert!(matches!(GroupBox::with_limit(d, 1000), Err(Error::GroupTooLarge { .. })));
    }

    #[test]
    fn words_and_lengths() {
        let b2 = boxed(B, 2);
        assert_eq!(b2.from_word(&[]).unwrap(), b2.identity());
        let w0 = b2.from_word(&[0, 1, 0, 1]).unwrap();
        assert_eq!(b2.length(w0), 4);
        assert_eq!(b2.descent_mask(w0), 0b11);
        assert_eq!(b2.longest_element(), w0);
        assert_eq!(b2.descent_mask(b2.generator(0)), 0b01);
        assert_eq!(b2.descent_mask(0), 0);
        for id in 0..b2.order() as ElemId {
            assert_eq!(b2.from_word(&b2.word(id)).unwrap(), id);
            assert_eq!(b2.word(id).len(), b2.length(id));
        }
        assert!(b2.from_word(&[2]).is_err());
    }

    #[test]
    fn transversal_b2() {
        let b2 = boxed(B, 2);
        let full = Subgroup::full(&b2);
        let x = b2.parabolic_transversal(&full, &[0], &[0, 1]).unwrap();
        let mut words: Vec<Vec<usize>> = x.iter().map(|&e| b2.word(e)).collect();
        words.sort();
        // words ε, 2, 21, 212 in 0-based labels
        let expect = [vec![], vec![1], vec![1, 0], vec![1, 0, 1]];
        let mut expect_ids: Vec<ElemId> = expect.iter().map(|w| b2.from_word(w).unwrap()).collect();
        let mut got = x.clone();
        got.sort();
        expect_ids.sort();
        assert_eq!(got, expect_ids);
        assert_eq!(b2.parabolic_transversal(&full, &[], &[0, 1]).unwrap().len(), 8);
        assert_eq!(b2.parabolic_transversal(&full, &[0, 1], &[0, 1]).unwrap(), vec![0]);
        assert!(b2.parabolic_transversal(&full, &[0], &[1]).is_err());
    }

    #[test]
    fn transversal_sizes_multiply() {
        for (t, n) in [(A, 3), (B, 3), (A, 4), (B, 4), (D, 4)] {
            let gb = boxed(t, n);
            for lmask in 0u32..(1 << n) {
                let l = mask_to_subset(lmask);
                let wl = Subgroup::parabolic(&gb, &l);
                for jmask in 0u32..(1 << n) {
                    if jmask & !lmask != 0 {
                        continue;
                    }
                    let j = mask_to_subset(jmask);
                    let wj = Subgroup::parabolic(&gb, &j);
                    let x = gb.parabolic_transversal(&wl, &j, &l).unwrap();
                    assert_eq!(x.len() * wj.order(), wl.order());
                }
            }
        }
    }

    #[test]
    fn parabolic_coordinates_b2() {
        let b2 = boxed(B, 2);
        let w0 = b2.longest_element();
        let (x, u) = b2.parabolic_coordinates(w0, &[0]);
        assert_eq!(x, b2.from_word(&[1, 0, 1]).unwrap());
        assert_eq!(u, b2.generator(0));
        let s = b2.generator(0);
        assert_eq!(b2.parabolic_coordinates(s, &[0]), (0, s));
    }

    #[test]
    fn parabolic_coordinates_bijective_and_additive() {
        let gb = boxed(B, 3);
        for lmask in 0u32..8 {
            let l = mask_to_subset(lmask);
            let mut seen = alloc::collections::BTreeSet::new();
            for w in 0..gb.order() as ElemId {
                let (x, u) = gb.parabolic_coordinates(w, &l);
                assert_eq!(gb.mul(x, u), w);
                assert_eq!(gb.length(x) + gb.length(u), gb.length(w));
                assert!(Subgroup::parabolic(&gb, &l).contains(u));
                assert!(seen.insert((x, u)));
            }
        }
    }

    #[test]
    fn normalizer_semidirect_sizes() {
        for (t, n) in [(B, 3), (D, 4), (A, 4)] {
            let gb = boxed(t, n);
            for lmask in 0u32..(1 << n) {
                let p = Parabolic::new(&gb, &mask_to_subset(lmask)).unwrap();
                let (norm, nl) = p.normalizer(&gb);
                assert_eq!(norm.order(), p.group.order() * nl.len());
                // Brute force normalizer.
                let brute = (0..gb.order() as ElemId)
                    .filter(|&g| p.group.generators().iter().all(|&s| p.group.contains(gb.conj(s, g))))
                    .count();
                assert_eq!(brute, norm.order());
                let inter = nl.iter().filter(|&&x| p.group.contains(x)).count();
                assert_eq!(inter, 1);
            }
        }
    }

    #[test]
    fn bulky_examples() {
        let b5 = boxed(B, 5);
        assert!(b5.is_bulky(&[0, 1, 2, 3, 4]));
        assert_eq!(b5.normalizer_complement(&[0, 1, 2, 3, 4]), vec![0]);
        assert!(!b5.is_bulky(&[0, 1, 3, 4]));
        let d5 = boxed(D, 5);
        assert!(!d5.is_bulky(&[0, 1, 2, 3]));
    }

    #[test]
    fn class_counts() {
        let a2 = boxed(A, 2);
        let cl = Subgroup::full(&a2).classes(&a2);
        assert_eq!(cl.sizes(), &[1, 3, 2]);
        let b2 = boxed(B, 2);
        assert_eq!(Subgroup::full(&b2).classes(&b2).len(), 5);
        let b5 = boxed(B, 5);
        assert_eq!(Subgroup::full(&b5).classes(&b5).len(), 36);
        let d5 = boxed(D, 5);
        assert_eq!(Subgroup::full(&d5).classes(&d5).len(), 18);
    }

    #[test]
    fn class_reps_are_minimal_and_partition() {
        let gb = boxed(B, 3);
        let full = Subgroup::full(&gb);
        let cl = full.classes(&gb);
        assert_eq!(cl.sizes().iter().sum::<usize>(), gb.order());
        for k in 0..cl.len() {
            let min = cl.members(k).iter().map(|&m| gb.length(m)).min().unwrap();
            assert_eq!(gb.length(cl.rep(k)), min);
            for &m in cl.members(k) {
                assert_eq!(cl.class_of(m), Some(k));
            }
        }
    }

    #[test]
    fn centralizers() {
        let b2 = boxed(B, 2);
        let full = Subgroup::full(&b2);
        assert_eq!(full.centralizer(&b2, 0).order(), 8);
        assert_eq!(full.centralizer(&b2, b2.longest_element()).order(), 8);
        let c = full.centralizer(&b2, b2.generator(0));
        assert_eq!(c.order(), 4);
        assert_eq!(Subgroup::generated(&b2, c.generators()).order(), 4);
    }

    #[test]
    fn fixed_spaces() {
        let b5 = boxed(B, 5);
        assert_eq!(b5.fixed_space(&[0]).len(), 5);
        assert_eq!(b5.fixed_space(&[b5.longest_element()]).len(), 0);
        assert!(b5.is_cuspidal_in(b5.longest_element(), &[0, 1, 2, 3, 4]));
        assert!(!b5.is_cuspidal_in(0, &[0, 1, 2, 3, 4]));
        let b2 = boxed(B, 2);
        for w in [b2.from_word(&[0, 1]).unwrap(), b2.from_word(&[1, 0]).unwrap()] {
            assert!(b2.is_cuspidal_in(w, &[0, 1]));
        }
        // Each basis vector is fixed.
        let w = b5.from_word(&[0, 1]).unwrap();
        let basis = b5.fixed_space(&[w]);
        assert_eq!(basis.len(), 3);
        let g = linalg::from_ints(&b5.matrix(w));
        assert_eq!(linalg::mul(&basis, &g), basis);
    }

    #[test]
    fn sign_is_determinant() {
        for (t, n) in [(A, 3), (B, 3)] {
            let gb = boxed(t, n);
            for w in 0..gb.order() as ElemId {
                let e = if gb.length(w) % 2 == 0 { 1 } else { -1 };
                assert_eq!(gb.determinant(w), Rational::from_integer(e));
            }
        }
    }

    #[test]
    fn bn_cuspidal_words() {
        let b = bn_cuspidal_rep(2, &[2]).unwrap();
        assert_eq!(b.cycles, vec![vec![0, 1]]);
        let b = bn_cuspidal_rep(2, &[1, 1]).unwrap();
        assert_eq!(b.rep_word, vec![0, 1, 0, 1]);
        assert_eq!(b.generators, vec![("c1".into(), vec![0]), ("x1".into(), vec![1])]);
        let b = bn_cuspidal_rep(5, &[1, 1, 1, 2]).unwrap();
        let names: Vec<&str> = b.generators.iter().map(|(n, _)| n.as_str()).collect();
        assert_eq!(names, ["c1", "c4", "x1", "x2"]);
        assert_eq!(b.generators[1].1, vec![3, 2, 1, 0, 1, 2, 3, 4]);
        let b = bn_cuspidal_rep(5, &[1, 2, 2]).unwrap();
        assert_eq!(b.generators[2], ("x2".into(), vec![3, 2, 4, 3]));
        assert!(bn_cuspidal_rep(5, &[1, 2]).is_err());
        assert!(bn_cuspidal_rep(3, &[0, 3]).is_err());
    }

    #[test]
    fn bn_cuspidal_generators_centralize() {
        let gb = boxed(B, 5);
        let full = Subgroup::full(&gb);
        for parts in partitions(5) {
            let b = bn_cuspidal_rep(5, &parts).unwrap();
            let w = gb.from_word(&b.rep_word).unwrap();
            assert!(gb.is_cuspidal_in(w, &[0, 1, 2, 3, 4]));
            let gens: Vec<ElemId> = b.generators.iter().map(|(_, wd)| gb.from_word(wd).unwrap()).collect();
            for &g in &gens {
                assert!(gb.commutes(g, w));
            }
            let c = full.centralizer(&gb, w);
            assert_eq!(Subgroup::generated(&gb, &gens).order(), c.order());
        }
        let w = gb.from_word(&bn_cuspidal_rep(5, &[5]).unwrap().rep_word).unwrap();
        assert_eq!(full.centralizer(&gb, w).order(), 10);
    }

    #[test]
    fn dn_cuspidal_d5() {
        let d5 = boxed(D, 5);
        let b5 = boxed(B, 5);
        let reps = dn_cuspidal_reps(&d5, &b5).unwrap();
        assert_eq!(reps.len(), 3);
        for r in &reps {
            assert!(d5.is_cuspidal_in(r.element, &[0, 1, 2, 3, 4]));
        }
        let r14 = reps.iter().find(|r| r.partition == vec![1, 4]).unwrap();
        assert_eq!(r14.element, d5.from_word(&d5.datum().parse_word("1'2345").unwrap()).unwrap());
        assert_eq!(r14.centralizer.order(), 8);
    }

    #[test]
    fn fusion_into_b2() {
        let b2 = boxed(B, 2);
        let full = Subgroup::full(&b2);
        let gcl = full.classes(&b2);
        let a1a1 = Subgroup::generated(&b2, &[b2.generator(0), b2.reflection(2).unwrap()]);
        let hcl = a1a1.classes(&b2);
        assert_eq!(hcl.len(), 4);
        let f = class_fusion(&hcl, &gcl).unwrap();
        let mut distinct = f.clone();
        distinct.sort();
        distinct.dedup();
        assert!(distinct.len() <= 4);
        assert_eq!(class_fusion(&gcl, &gcl).unwrap(), (0..gcl.len()).collect::<Vec<_>>());
        let triv = Subgroup::generated(&b2, &[]);
        assert_eq!(class_fusion(&triv.classes(&b2), &gcl).unwrap(), vec![0]);
    }

    #[test]
    fn class_labels() {
        let b2 = boxed(B, 2);
        let cl = Subgroup::full(&b2).classes(&b2);
        let labels = cl.labels();
        assert_eq!(labels[0], "1a");
        assert!(labels.iter().any(|l| l == "2c"));
    }
}
