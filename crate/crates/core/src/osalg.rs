//! The Orlik–Solomon algebra of a reflection arrangement, through its
//! non-broken-circuit (NBC) basis, and the characters computed from it.
//!
//! Generators are indexed by positive roots. A total order on the positive
//! roots is fixed when the algebra is built; internally every root is
//! replaced by its position in that order, so monomials are strictly
//! increasing sequences of positions and lexicographic comparison of the
//! sequences is the monomial order.
//!
//! The flats of the arrangement (sets of roots spanning a subspace, closed
//! under taking roots in the span) are enumerated once, with a join table
//! `flat × root → flat`. Both the NBC test and the rewriting step of
//! [`OsAlgebra::coeff`] reduce to lookups in that table: a sorted
//! independent sequence `a_1 < ... < a_q` is NBC iff every `a_j` is the
//! largest root of the flat spanned by `a_1, ..., a_j`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use hashbrown::HashMap;
use num_traits::Zero;

use crate::classfn::ClassFunction;
use crate::coxgroup::{Classes, ElemId, GroupBox, Parabolic};
use crate::error::{Error, Result};
use crate::linalg;
use crate::rootsys::{CoxeterDatum, RootOrder};
use crate::Rational;

const MAX_DEGREE: usize = 8;

/// A strictly increasing sequence of root positions.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    len: u8,
    r: [u8; MAX_DEGREE],
}

impl Monomial {
    pub fn empty() -> Self {
        Monomial { len: 0, r: [0; MAX_DEGREE] }
    }

    /// Sorts `roots` and returns the monomial with the sign of the sorting
    /// permutation, or `None` if a root repeats (the product is zero).
    pub fn sorted(roots: &[u8]) -> Option<(Monomial, i64)> {
        let mut r = [0u8; MAX_DEGREE];
        r[..roots.len()].copy_from_slice(roots);
        let s = &mut r[..roots.len()];
        let mut sign = 1;
        // insertion sort, counting transpositions
        for i in 1..s.len() {
            let mut j = i;
            while j > 0 && s[j - 1] > s[j] {
                s.swap(j - 1, j);
                sign = -sign;
                j -= 1;
            }
            if j > 0 && s[j - 1] == s[j] {
                return None;
            }
        }
        Some((Monomial { len: roots.len() as u8, r }, sign))
    }

    pub fn from_sorted(roots: &[u8]) -> Self {
        debug_assert!(roots.windows(2).all(|w| w[0] < w[1]));
        let mut r = [0u8; MAX_DEGREE];
        r[..roots.len()].copy_from_slice(roots);
        Monomial { len: roots.len() as u8, r }
    }

    pub fn degree(&self) -> usize {
        self.len as usize
    }

    pub fn roots(&self) -> &[u8] {
        &self.r[..self.len as usize]
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.roots())
    }
}

/// Memo table for [`OsAlgebra::coeff`]; reusable across elements of the
/// same algebra.
pub type CoeffMemo = HashMap<(Monomial, Monomial), i64>;

#[derive(Clone, Debug)]
pub struct OsAlgebra {
    n_pos: usize,
    rank: usize,
    /// position -> root index
    root_at: Vec<usize>,
    /// root index -> position
    pos_of: Vec<usize>,
    flats: Vec<u128>,
    flat_rank: Vec<u8>,
    /// `join[f * n_pos + p]`: flat spanned by flat `f` and the root at position `p`
    join: Vec<u32>,
    nbc: Vec<Vec<Monomial>>,
    /// Disables the `a > b` cutoff in [`OsAlgebra::coeff`].
    pub exhaustive: bool,
}

impl OsAlgebra {
    pub fn new(datum: &CoxeterDatum) -> Self {
        Self::with_order(datum, RootOrder::Canonical)
    }

    pub fn with_order(datum: &CoxeterDatum, order: RootOrder) -> Self {
        let n_pos = datum.num_positive();
        assert!(n_pos <= 128, "arrangement too large");
        let pos_of = datum.order_positions(order);
        let mut root_at = vec![0; n_pos];
        for (r, &p) in pos_of.iter().enumerate() {
            root_at[p] = r;
        }
        let vectors: Vec<Vec<i64>> = root_at.iter().map(|&r| datum.root_vector(r)).collect();
        let mut os = OsAlgebra {
            n_pos,
            rank: datum.rank(),
            root_at,
            pos_of,
            flats: Vec::new(),
            flat_rank: Vec::new(),
            join: Vec::new(),
            nbc: Vec::new(),
            exhaustive: false,
        };
        os.build_flats(&vectors);
        os.build_nbc();
        os
    }

    fn build_flats(&mut self, vectors: &[Vec<i64>]) {
        let n = self.n_pos;
        let mut index: HashMap<u128, u32> = HashMap::new();
        // Each flat keeps a basis of root vectors.
        let mut bases: Vec<Vec<usize>> = vec![Vec::new()];
        self.flats.push(0);
        self.flat_rank.push(0);
        index.insert(0, 0);
        let mut head = 0;
        while head < self.flats.len() {
            let f = self.flats[head];
            let basis = bases[head].clone();
            for p in 0..n {
                let target = if f & (1u128 << p) != 0 {
                    head as u32
                } else {
                    let mut nb = basis.clone();
                    nb.push(p);
                    let rk = nb.len();
                    let mut mask = 0u128;
                    for (q, v) in vectors.iter().enumerate() {
                        let mut rows: Vec<Vec<i64>> = nb.iter().map(|&i| vectors[i].clone()).collect();
                        rows.push(v.clone());
                        if linalg::int_rank(&mut rows) == rk {
                            mask |= 1u128 << q;
                        }
                    }
                    match index.get(&mask) {
                        Some(&id) => id,
                        None => {
                            let id = self.flats.len() as u32;
                            self.flats.push(mask);
                            self.flat_rank.push(rk as u8);
                            bases.push(nb);
                            index.insert(mask, id);
                            id
                        }
                    }
                };
                self.join.push(target);
            }
            head += 1;
        }
    }

    #[inline]
    fn join(&self, flat: u32, p: u8) -> u32 {
        self.join[flat as usize * self.n_pos + p as usize]
    }

    fn build_nbc(&mut self) {
        let mut out = vec![Vec::new(); self.rank + 1];
        let mut cur = Vec::new();
        self.nbc_dfs(0, 0, &mut cur, &mut out);
        for level in out.iter_mut() {
            level.sort();
        }
        self.nbc = out;
    }

    fn nbc_dfs(&self, flat: u32, start: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<Monomial>>) {
        out[cur.len()].push(Monomial::from_sorted(cur));
        if cur.len() == self.rank {
            return;
        }
        for p in start..self.n_pos {
            let next = self.join(flat, p as u8);
            if next == flat {
                continue;
            }
            if highest_bit(self.flats[next as usize]) != p {
                continue;
            }
            cur.push(p as u8);
            self.nbc_dfs(next, p + 1, cur, out);
            cur.pop();
        }
    }

    pub fn num_positive(&self) -> usize {
        self.n_pos
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn num_flats(&self) -> usize {
        self.flats.len()
    }

    /// NBC monomials of the given degree, sorted.
    pub fn nbc_basis(&self, degree: usize) -> &[Monomial] {
        &self.nbc[degree]
    }

    pub fn position(&self, root: usize) -> u8 {
        self.pos_of[root] as u8
    }

    pub fn root_at(&self, pos: u8) -> usize {
        self.root_at[pos as usize]
    }

    /// Monomial for a set of positive root indices, with its sorting sign.
    pub fn monomial_from_roots(&self, roots: &[usize]) -> Option<(Monomial, i64)> {
        let p: Vec<u8> = roots.iter().map(|&r| self.position(r)).collect();
        Monomial::sorted(&p)
    }

    /// Checks the NBC condition; `None` if the monomial is dependent (zero).
    fn first_bad_prefix(&self, a: &Monomial) -> Option<Option<(usize, u32)>> {
        let mut flat = 0u32;
        for (j, &p) in a.roots().iter().enumerate() {
            let next = self.join(flat, p);
            if next == flat {
                return None;
            }
            flat = next;
            if highest_bit(self.flats[flat as usize]) != p as usize {
                return Some(Some((j, flat)));
            }
        }
        Some(None)
    }

    pub fn is_nbc(&self, a: &Monomial) -> bool {
        matches!(self.first_bad_prefix(a), Some(None))
    }

    pub fn is_independent(&self, a: &Monomial) -> bool {
        self.first_bad_prefix(a).is_some()
    }

    /// Coefficient of the NBC monomial `b` in the NBC expansion of `a`.
    ///
    /// If `a` is not NBC, take the shortest prefix `a_1 ... a_j` whose flat
    /// contains a root `r > a_j` (the smallest such). The prefix together
    /// with `r` is dependent, and the defining relation gives
    /// `a = Σ_k a[a_k → r]` over the `k ≤ j` for which the replacement stays
    /// independent. Each term is lexicographically larger than `a`.
    pub fn coeff(&self, a: &Monomial, b: &Monomial, memo: &mut CoeffMemo) -> Result<i64> {
        if a.len != b.len {
            return Err(Error::DegreeMismatch(a.degree(), b.degree()));
        }
        Ok(self.coeff_rec(a, b, memo))
    }

    fn coeff_rec(&self, a: &Monomial, b: &Monomial, memo: &mut CoeffMemo) -> i64 {
        if !self.exhaustive && a > b {
            return 0;
        }
        let (j, flat) = match self.first_bad_prefix(a) {
            None => return 0,
            Some(None) => return (a == b) as i64,
            Some(Some(x)) => x,
        };
        if let Some(&v) = memo.get(&(*a, *b)) {
            return v;
        }
        let roots = a.roots();
        let aj = roots[j] as usize;
        let mask = self.flats[flat as usize] & !((2u128 << aj) - 1);
        let r = mask.trailing_zeros() as u8;
        let mut total = 0i64;
        for k in 0..=j {
            // Independence of the replaced prefix.
            let mut f = 0u32;
            let mut independent = true;
            for (i, &p) in roots[..=j].iter().enumerate() {
                let q = if i == k { r } else { p };
                let nf = self.join(f, q);
                if nf == f {
                    independent = false;
                    break;
                }
                f = nf;
            }
            if !independent {
                continue;
            }
            let mut replaced = [0u8; MAX_DEGREE];
            replaced[..roots.len()].copy_from_slice(roots);
            replaced[k] = r;
            if let Some((m, sign)) = Monomial::sorted(&replaced[..roots.len()]) {
                debug_assert!(m > *a);
                total += sign * self.coeff_rec(&m, b, memo);
            }
        }
        memo.insert((*a, *b), total);
        total
    }

    /// Trace on the degree-`degree` part of the permutation action of an
    /// element given by its action on positive roots (as root indices,
    /// up to sign already removed).
    pub fn trace(&self, degree: usize, act: impl Fn(usize) -> usize, memo: &mut CoeffMemo) -> i64 {
        let mut total = 0;
        let perm: Vec<u8> = (0..self.n_pos).map(|p| self.position(act(self.root_at(p as u8)))).collect();
        let mut buf = [0u8; MAX_DEGREE];
        for b in &self.nbc[degree] {
            for (i, &p) in b.roots().iter().enumerate() {
                buf[i] = perm[p as usize];
            }
            if let Some((a, sign)) = Monomial::sorted(&buf[..degree]) {
                total += sign * self.coeff_rec(&a, b, memo);
            }
        }
        total
    }
}

fn highest_bit(m: u128) -> usize {
    127 - m.leading_zeros() as usize
}

/// Positive root index of `gb.image(w, r)`.
#[inline]
fn positive_image(gb: &GroupBox, w: ElemId, r: usize) -> usize {
    let n = gb.datum().num_positive();
    let i = gb.image(w, r);
    if i >= n {
        i - n
    } else {
        i
    }
}

/// `ω(w)` on one graded piece of `A(W)`.
pub fn omega_value(gb: &GroupBox, os: &OsAlgebra, w: ElemId, degree: usize, memo: &mut CoeffMemo) -> i64 {
    os.trace(degree, |r| positive_image(gb, w, r), memo)
}

/// `ω` on the classes of `W`: all degrees summed, or only the top degree.
pub fn omega_character(gb: &GroupBox, os: &OsAlgebra, classes: &Classes, top_only: bool) -> ClassFunction {
    let mut memo = CoeffMemo::new();
    let degrees: Vec<usize> = if top_only { vec![os.rank()] } else { (0..=os.rank()).collect() };
    let values: Vec<i64> = classes
        .reps()
        .iter()
        .map(|&w| degrees.iter().map(|&d| omega_value(gb, os, w, d, &mut memo)).sum())
        .collect();
    ClassFunction::from_integers(&values)
}

/// The top component of `A(W_L)` with the action of `N_W(W_L)`, which goes
/// through the root inclusion `W_L → W` and back.
#[derive(Clone, Debug)]
pub struct TopComponent {
    pub os: OsAlgebra,
    inclusion: Vec<usize>,
    restriction: Vec<Option<usize>>,
}

impl TopComponent {
    pub fn new(p: &Parabolic) -> Self {
        TopComponent { os: OsAlgebra::new(&p.datum), inclusion: p.inclusion.clone(), restriction: p.restriction.clone() }
    }

    pub fn dimension(&self) -> usize {
        self.os.nbc_basis(self.os.rank()).len()
    }

    /// `ω̃_L(w)` for `w ∈ N_W(W_L)`.
    pub fn value(&self, gb: &GroupBox, w: ElemId, memo: &mut CoeffMemo) -> Result<i64> {
        let mut images = Vec::with_capacity(self.inclusion.len());
        for &r in &self.inclusion {
            images.push(self.restriction[positive_image(gb, w, r)].ok_or(Error::NotInvariant)?);
        }
        Ok(self.os.trace(self.os.rank(), |k| images[k], memo))
    }

    pub fn character(&self, gb: &GroupBox, classes: &Classes) -> Result<ClassFunction> {
        let mut memo = CoeffMemo::new();
        let values = classes.reps().iter().map(|&w| self.value(gb, w, &mut memo)).collect::<Result<Vec<i64>>>()?;
        Ok(ClassFunction::from_integers(&values))
    }
}

/// `α_L(n)`: determinant of `n` on the fixed space of `W_L`.
pub fn alpha_character(gb: &GroupBox, p: &Parabolic, classes: &Classes) -> Result<ClassFunction> {
    let gens: Vec<ElemId> = p.subset.iter().map(|&s| gb.generator(s)).collect();
    let basis = gb.fixed_space(&gens);
    let values = classes
        .reps()
        .iter()
        .map(|&n| gb.restricted_determinant(n, &basis))
        .collect::<Result<Vec<Rational>>>()?;
    Ok(ClassFunction::from_rationals(&values))
}

/// `α_w(z)`: determinant of `z ∈ C_W(w)` on the 1-eigenspace of `w`.
pub fn alpha_w(gb: &GroupBox, w: ElemId, z: ElemId) -> Result<Rational> {
    if !gb.commutes(w, z) {
        return Err(Error::NotCentralizing);
    }
    gb.restricted_determinant(z, &gb.fixed_space(&[w]))
}

/// `α_w` on the classes of a subgroup of `C_W(w)`.
pub fn alpha_w_character(gb: &GroupBox, w: ElemId, classes: &Classes) -> Result<ClassFunction> {
    let basis = gb.fixed_space(&[w]);
    let values = classes
        .reps()
        .iter()
        .map(|&z| {
            if !gb.commutes(w, z) {
                return Err(Error::NotCentralizing);
            }
            gb.restricted_determinant(z, &basis)
        })
        .collect::<Result<Vec<Rational>>>()?;
    Ok(ClassFunction::from_rationals(&values))
}

/// Dense model of `A(W)` as the exterior algebra modulo the relations
/// `∂e_S` for dependent `S`, used to cross-check the NBC machinery on small
/// arrangements.
#[derive(Clone, Debug)]
pub struct DenseOracle {
    n_pos: usize,
    /// Per degree: row-reduced basis of the relation ideal, in coordinates
    /// over the monomial basis (bitmasks of that degree, ascending).
    ideal: Vec<linalg::Matrix>,
    monomials: Vec<Vec<u32>>,
}

impl DenseOracle {
    pub const MAX_ROOTS: usize = 12;

    /// `order` positions follow the same root order as the NBC algebra.
    pub fn new(datum: &CoxeterDatum, order: RootOrder) -> Result<Self> {
        let n = datum.num_positive();
        if n > Self::MAX_ROOTS {
            return Err(Error::GroupTooLarge { order: n, limit: Self::MAX_ROOTS });
        }
        let pos_of = datum.order_positions(order);
        let mut vec_at = vec![Vec::new(); n];
        for r in 0..n {
            vec_at[pos_of[r]] = datum.root_vector(r);
        }
        let dependent = |mask: u32| {
            let mut rows: Vec<Vec<i64>> = (0..n).filter(|&i| mask & (1 << i) != 0).map(|i| vec_at[i].clone()).collect();
            let k = rows.len();
            linalg::int_rank(&mut rows) < k
        };
        let mut monomials = vec![Vec::new(); n + 1];
        for m in 0u32..(1 << n) {
            monomials[m.count_ones() as usize].push(m);
        }
        let mut ideal = Vec::with_capacity(n + 1);
        for d in 0..=n {
            let col: HashMap<u32, usize> = monomials[d].iter().enumerate().map(|(i, &m)| (m, i)).collect();
            let mut rows: linalg::Matrix = Vec::new();
            // e_T ∧ ∂e_S with |T| + |S| - 1 = d
            for &s in monomials.iter().skip(1).flatten() {
                let ss = s.count_ones() as usize;
                if ss > d + 1 || !dependent(s) {
                    continue;
                }
                for &t in &monomials[d + 1 - ss] {
                    let mut row = vec![Rational::zero(); monomials[d].len()];
                    let elems: Vec<usize> = (0..n).filter(|&i| s & (1 << i) != 0).collect();
                    for (k, &drop) in elems.iter().enumerate() {
                        let sgn_bd = if k % 2 == 0 { 1 } else { -1 };
                        let rest = s & !(1 << drop);
                        if t & rest != 0 {
                            continue;
                        }
                        // e_T ∧ e_rest, both sorted: sign of merging
                        let sgn = sgn_bd * merge_sign(t, rest);
                        row[col[&(t | rest)]] += Rational::from_integer(sgn as i128);
                    }
                    rows.push(row);
                }
            }
            let mut r = rows;
            let pivots = linalg::rref(&mut r);
            r.truncate(pivots.len());
            ideal.push(r);
        }
        Ok(DenseOracle { n_pos: n, ideal, monomials })
    }

    /// Dimension of each graded piece of the quotient.
    pub fn dimensions(&self) -> Vec<usize> {
        let mut out: Vec<usize> = (0..=self.n_pos).map(|d| self.monomials[d].len() - self.ideal[d].len()).collect();
        while out.len() > 1 && *out.last().unwrap() == 0 {
            out.pop();
        }
        out
    }

    /// Coordinates of monomial `a` in the given basis of the quotient.
    pub fn expand(&self, a: &Monomial, basis: &[Monomial]) -> Option<Vec<Rational>> {
        let d = a.degree();
        let idx = |m: &Monomial| {
            let mask = m.roots().iter().fold(0u32, |acc, &p| acc | (1 << p));
            self.monomials[d].iter().position(|&x| x == mask).unwrap()
        };
        let width = self.monomials[d].len();
        let mut rows: linalg::Matrix = basis
            .iter()
            .map(|b| {
                let mut row = vec![Rational::zero(); width];
                row[idx(b)] = Rational::from_integer(1);
                row
            })
            .collect();
        rows.extend(self.ideal[d].iter().cloned());
        let mut target = vec![Rational::zero(); width];
        target[idx(a)] = Rational::from_integer(1);
        let x = linalg::solve_row(&rows, &target)?;
        Some(x[..basis.len()].to_vec())
    }
}

/// Sign of the shuffle putting `a ∪ b` (each sorted) in order, with `a`
/// first.
fn merge_sign(a: u32, b: u32) -> i64 {
    let mut inversions = 0;
    for i in 0..32 {
        if a & (1 << i) != 0 {
            inversions += (b & ((1u32 << i) - 1)).count_ones();
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}
