//! Solomon's descent algebra: the matrix `M` and its inverse, the
//! quasi-idempotents `e_J^L`, the idempotents `e_λ` attached to shapes, the
//! characters `ρ_λ`, and the extension `ρ̃_L` of the top component character
//! to `N_W(W_L)`.
//!
//! Subsets of `L` are encoded as local bitmasks: bit `k` stands for the
//! `k`-th smallest element of `L`. Rows and columns of `M` follow the binary
//! counter order on these masks, which makes `M` lower triangular.
//!
//! Every element of the descent algebra is a linear combination of group
//! elements whose coefficient only depends on the descent set, so such
//! elements are stored as one coefficient per descent set.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use hashbrown::{HashMap, HashSet};
use num_traits::{One, Zero};

use crate::classfn::ClassFunction;
use crate::coxgroup::{subset_mask, Classes, ElemId, GroupBox, Parabolic};
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::Rational;

/// Sparse element of the group algebra `QW`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GroupAlgebraVector {
    coeffs: BTreeMap<ElemId, Rational>,
}

impl GroupAlgebraVector {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn identity() -> Self {
        let mut v = Self::new();
        v.add_term(0, Rational::one());
        v
    }

    pub fn add_term(&mut self, g: ElemId, c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.coeffs.entry(g).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&g);
        }
    }

    pub fn coeff(&self, g: ElemId) -> Rational {
        self.coeffs.get(&g).copied().unwrap_or_else(Rational::zero)
    }

    pub fn support(&self) -> impl Iterator<Item = (&ElemId, &Rational)> {
        self.coeffs.iter()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&g, &c) in &other.coeffs {
            out.add_term(g, c);
        }
        out
    }

    pub fn scale(&self, q: Rational) -> Self {
        let mut out = Self::new();
        for (&g, &c) in &self.coeffs {
            out.add_term(g, c * q);
        }
        out
    }

    /// Convolution product.
    pub fn mul(&self, other: &Self, gb: &GroupBox) -> Self {
        let mut out = Self::new();
        for (&a, &ca) in &self.coeffs {
            for (&b, &cb) in &other.coeffs {
                out.add_term(gb.mul(a, b), ca * cb);
            }
        }
        out
    }
}

/// `M = (m_KJ)` and `N = M^{-1}` for a subset `L`.
#[derive(Clone, Debug)]
pub struct DescentMatrix {
    pub subset: Vec<usize>,
    pub m: Matrix,
    pub n: Matrix,
}

impl DescentMatrix {
    /// `m_KJ = #{x ∈ X_K^L : x^{-1} J x ⊆ L}` for `K ⊇ J`, and 0 otherwise.
    pub fn new(gb: &GroupBox, p: &Parabolic) -> Self {
        let l = &p.subset;
        let size = 1usize << l.len();
        let mut counts: HashMap<(u32, u32), u64> = HashMap::new();
        for &x in p.group.elements() {
            let d = to_local(gb.descent_mask(x), l);
            let mut t = 0u32;
            for (k, &j) in l.iter().enumerate() {
                if l.contains(&gb.image(x, j)) {
                    t |= 1 << k;
                }
            }
            *counts.entry((d, t)).or_insert(0) += 1;
        }
        let full = (size - 1) as u32;
        let mut m = vec![vec![Rational::zero(); size]; size];
        for (&(d, t), &c) in &counts {
            let free = full & !d;
            for k in submasks(free) {
                for j in submasks(k & t) {
                    m[k as usize][j as usize] += Rational::from_integer(c as i128);
                }
            }
        }
        let n = linalg::lower_triangular_inverse(&m);
        DescentMatrix { subset: l.clone(), m, n }
    }

    pub fn size(&self) -> usize {
        self.m.len()
    }

    /// Coefficient of `y` in `e_J^L`, as a function of the local descent
    /// set `d = D(y)`: the sum of `n_JK` over `K ⊆ L` with `K ∩ d = ∅`.
    pub fn quasi_idempotent_coeffs(&self, j_local: u32) -> Vec<Rational> {
        let size = self.size();
        (0..size)
            .map(|d| {
                (0..size)
                    .filter(|k| k & d == 0)
                    .map(|k| self.n[j_local as usize][k])
                    .fold(Rational::zero(), |a, b| a + b)
            })
            .collect()
    }

    /// `e_J^L` as an explicit vector, built as `Σ_K n_JK x_K^L`.
    pub fn quasi_idempotent(&self, gb: &GroupBox, p: &Parabolic, j_local: u32) -> GroupAlgebraVector {
        let mut v = GroupAlgebraVector::new();
        for k in 0..self.size() {
            let c = self.n[j_local as usize][k];
            if c.is_zero() {
                continue;
            }
            for &x in p.group.elements() {
                if to_local(gb.descent_mask(x), &self.subset) & k as u32 == 0 {
                    v.add_term(x, c);
                }
            }
        }
        v
    }
}

/// Converts a mask over `S` into a mask over positions in `l`.
pub fn to_local(global: u32, l: &[usize]) -> u32 {
    l.iter().enumerate().filter(|(_, &s)| global & (1 << s) != 0).fold(0, |m, (k, _)| m | (1 << k))
}

pub fn to_global(local: u32, l: &[usize]) -> u32 {
    l.iter().enumerate().filter(|(k, _)| local & (1 << k) != 0).fold(0, |m, (_, &s)| m | (1 << s))
}

/// All submasks of `mask`, including 0 and `mask`.
fn submasks(mask: u32) -> impl Iterator<Item = u32> {
    let mut cur = Some(mask);
    core::iter::from_fn(move || {
        let c = cur?;
        cur = if c == 0 { None } else { Some((c - 1) & mask) };
        Some(c)
    })
}

/// A descent-algebra element of `W`: one coefficient per descent set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DescentElement {
    pub coeffs: Vec<Rational>,
}

impl DescentElement {
    #[inline]
    pub fn at(&self, gb: &GroupBox, g: ElemId) -> Rational {
        self.coeffs[gb.descent_mask(g) as usize]
    }

    pub fn to_vector(&self, gb: &GroupBox) -> GroupAlgebraVector {
        let mut v = GroupAlgebraVector::new();
        for g in 0..gb.order() as ElemId {
            v.add_term(g, self.at(gb, g));
        }
        v
    }

    pub fn is_identity(&self) -> bool {
        self.coeffs.iter().enumerate().all(|(d, c)| if d == 0 { c.is_one() } else { c.is_zero() })
    }
}

/// A `W`-conjugacy class of subsets of `S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Shape {
    /// Member subsets, sorted; the first one is the representative.
    pub members: Vec<Vec<usize>>,
}

impl Shape {
    pub fn rep(&self) -> &[usize] {
        &self.members[0]
    }

    pub fn masks(&self) -> Vec<u32> {
        self.members.iter().map(|m| subset_mask(m)).collect()
    }
}

/// Shapes of `W`, ordered by the size of their subsets and then by
/// representative.
pub fn shapes(gb: &GroupBox) -> Vec<Shape> {
    let n = gb.rank();
    let size = 1usize << n;
    let mut parent: Vec<usize> = (0..size).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let nx = p[y];
            p[y] = r;
            y = nx;
        }
        r
    }
    for w in 0..gb.order() as ElemId {
        let mut t = 0u32;
        for i in 0..n {
            if gb.image(w, i) < n {
                t |= 1 << i;
            }
        }
        for j in submasks(t) {
            let mut img = 0u32;
            for i in 0..n {
                if j & (1 << i) != 0 {
                    img |= 1 << gb.image(w, i);
                }
            }
            let (a, b) = (find(&mut parent, j as usize), find(&mut parent, img as usize));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<Vec<usize>>> = BTreeMap::new();
    for mask in 0..size {
        let r = find(&mut parent, mask);
        groups.entry(r).or_default().push(crate::coxgroup::mask_to_subset(mask as u32));
    }
    let mut out: Vec<Shape> = groups
        .into_values()
        .map(|mut members| {
            members.sort();
            Shape { members }
        })
        .collect();
    out.sort_by(|a, b| (a.rep().len(), a.rep()).cmp(&(b.rep().len(), b.rep())));
    out
}

/// The idempotents `e_λ = Σ_{J ∈ λ} e_J`, where `e_J = Σ_K n_JK x_K` is
/// built from the matrix of the whole group. Returned in [`shapes`] order.
pub fn shape_idempotents(gb: &GroupBox) -> Result<(Vec<Shape>, Vec<DescentElement>)> {
    let all: Vec<usize> = (0..gb.rank()).collect();
    let p = Parabolic::new(gb, &all)?;
    let dm = DescentMatrix::new(gb, &p);
    let sh = shapes(gb);
    let elems = sh
        .iter()
        .map(|s| {
            let mut coeffs = vec![Rational::zero(); dm.size()];
            for j in s.masks() {
                for (c, a) in coeffs.iter_mut().zip(dm.quasi_idempotent_coeffs(j)) {
                    *c += a;
                }
            }
            DescentElement { coeffs }
        })
        .collect();
    Ok((sh, elems))
}

/// `T[d1][d2] = #{h ∈ W : D(h) = d1, D(h^{-1} g) = d2}`, so that the
/// coefficient of `g` in a product `a·b` of descent-algebra elements is
/// `Σ a[d1] b[d2] T[d1][d2]`.
pub fn descent_count_table(gb: &GroupBox, g: ElemId) -> Vec<Vec<u32>> {
    let size = 1usize << gb.rank();
    let mut t = vec![vec![0u32; size]; size];
    for h in 0..gb.order() as ElemId {
        let d1 = gb.descent_mask(h) as usize;
        let d2 = gb.descent_mask(gb.mul(gb.inv(h), g)) as usize;
        t[d1][d2] += 1;
    }
    t
}

/// Coefficients of `g` in all products `a_i a_j`.
pub fn product_coefficients(gb: &GroupBox, elems: &[DescentElement], g: ElemId) -> Vec<Vec<Rational>> {
    let t = descent_count_table(gb, g);
    let size = t.len();
    let left: Vec<Vec<Rational>> = elems
        .iter()
        .map(|a| {
            (0..size)
                .map(|d2| {
                    (0..size)
                        .filter(|&d1| t[d1][d2] != 0 && !a.coeffs[d1].is_zero())
                        .map(|d1| a.coeffs[d1] * Rational::from_integer(t[d1][d2] as i128))
                        .fold(Rational::zero(), |x, y| x + y)
                })
                .collect()
        })
        .collect();
    left.iter()
        .map(|l| {
            elems
                .iter()
                .map(|b| l.iter().zip(&b.coeffs).map(|(x, y)| *x * *y).fold(Rational::zero(), |p, q| p + q))
                .collect()
        })
        .collect()
}

/// A failed orthogonality check: `(e_i e_j)(g)` differs from `δ_ij e_i(g)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdempotentViolation {
    pub i: usize,
    pub j: usize,
    pub element: ElemId,
    pub expected: Rational,
    pub got: Rational,
}

/// Checks `e_i e_j = δ_ij e_i` at the coefficients of the given elements.
pub fn check_orthogonal_idempotents(
    gb: &GroupBox,
    elems: &[DescentElement],
    points: impl IntoIterator<Item = ElemId>,
) -> core::result::Result<usize, IdempotentViolation> {
    let mut checked = 0;
    for g in points {
        let prods = product_coefficients(gb, elems, g);
        for (i, row) in prods.iter().enumerate() {
            for (j, got) in row.iter().enumerate() {
                let expected = if i == j { elems[i].at(gb, g) } else { Rational::zero() };
                if *got != expected {
                    return Err(IdempotentViolation { i, j, element: g, expected, got: *got });
                }
            }
        }
        checked += 1;
    }
    Ok(checked)
}

/// One element for each descent set that occurs (the shortest, ties by
/// id). Products of descent-algebra elements are determined by their
/// values there.
pub fn descent_representatives(gb: &GroupBox) -> Vec<ElemId> {
    let mut best: BTreeMap<u32, ElemId> = BTreeMap::new();
    for g in 0..gb.order() as ElemId {
        best.entry(gb.descent_mask(g)).or_insert(g);
    }
    best.into_values().collect()
}

/// `Σ_λ e_λ = 1`.
pub fn sums_to_identity(elems: &[DescentElement]) -> bool {
    let size = elems.first().map_or(1, |e| e.coeffs.len());
    let mut total = DescentElement { coeffs: vec![Rational::zero(); size] };
    for e in elems {
        for (t, c) in total.coeffs.iter_mut().zip(&e.coeffs) {
            *t += *c;
        }
    }
    total.is_identity()
}

/// Character of the right ideal `e·QW`: `ρ(w) = |C_W(w)| Σ_{y ~ w^{-1}} e(y)`.
pub fn rho_lambda(gb: &GroupBox, classes: &Classes, e: &DescentElement) -> ClassFunction {
    let values: Vec<Rational> = (0..classes.len())
        .map(|k| {
            let inv_class = classes.class_of(gb.inv(classes.rep(k))).unwrap();
            let s = classes.members(inv_class).iter().map(|&y| e.at(gb, y)).fold(Rational::zero(), |a, b| a + b);
            s * Rational::from_integer(classes.centralizer_order(k) as i128)
        })
        .collect();
    ClassFunction::from_rationals(&values)
}

/// Trace of `v ↦ e v w` on `QW`, summed over the group: `Σ_g e(g w^{-1} g^{-1})`.
pub fn rho_lambda_direct(gb: &GroupBox, classes: &Classes, e: &DescentElement) -> ClassFunction {
    let values: Vec<Rational> = classes
        .reps()
        .iter()
        .map(|&w| {
            let wi = gb.inv(w);
            (0..gb.order() as ElemId)
                .map(|g| e.at(gb, gb.mul(gb.mul(g, wi), gb.inv(g))))
                .fold(Rational::zero(), |a, b| a + b)
        })
        .collect();
    ClassFunction::from_rationals(&values)
}

/// Coefficients of `e_L^L` indexed by global descent masks (zero outside
/// subsets of `L`).
fn top_coeffs(dm: &DescentMatrix) -> Vec<Rational> {
    let full = (dm.size() - 1) as u32;
    let local = dm.quasi_idempotent_coeffs(full);
    let n = dm.subset.iter().copied().max().map_or(0, |m| m + 1);
    let mut out = vec![Rational::zero(); 1 << n];
    for (d, c) in local.into_iter().enumerate() {
        out[to_global(d as u32, &dm.subset) as usize] = c;
    }
    out
}

fn coeff_of(top: &[Rational], gb: &GroupBox, y: ElemId) -> Rational {
    top.get(gb.descent_mask(y) as usize).copied().unwrap_or_else(Rational::zero)
}

/// Splits `g ∈ N_W(W_L)` as `g = w n` with `w ∈ W_L`, `n ∈ N_L`.
pub fn split_normalizer_element(gb: &GroupBox, p: &Parabolic, nl: &HashSet<ElemId>, g: ElemId) -> Result<(ElemId, ElemId)> {
    let (n, _u) = gb.parabolic_coordinates(g, &p.subset);
    if !nl.contains(&n) {
        return Err(Error::NotAMember);
    }
    Ok((gb.mul(g, gb.inv(n)), n))
}

/// Orbit of `y` under `y ·_n z = n z^{-1} n^{-1} y z`, `z ∈ W_L`.
pub fn twisted_orbit(gb: &GroupBox, p: &Parabolic, n: ElemId, y: ElemId) -> Vec<ElemId> {
    let ninv = gb.inv(n);
    let gens: Vec<ElemId> = p.subset.iter().map(|&s| gb.generator(s)).collect();
    let mut seen: HashSet<ElemId> = HashSet::new();
    seen.insert(y);
    let mut orbit = vec![y];
    let mut head = 0;
    while head < orbit.len() {
        let x = orbit[head];
        head += 1;
        for &z in &gens {
            // z is an involution, so z^{-1} = z.
            let next = gb.mul(gb.mul(gb.mul(gb.mul(n, z), ninv), x), z);
            if seen.insert(next) {
                orbit.push(next);
            }
        }
    }
    orbit
}

/// `ρ̃_L(wn) = |C_{W_L}(wn)| Σ_{J ⊆ L} n_LJ |O_n(w^{-1}) ∩ X_J^L|`, on the
/// classes of `N_W(W_L)`.
pub fn rho_tilde(gb: &GroupBox, p: &Parabolic, dm: &DescentMatrix, nl: &[ElemId], n_classes: &Classes) -> Result<ClassFunction> {
    let top = top_coeffs(dm);
    let nl_set: HashSet<ElemId> = nl.iter().copied().collect();
    let wl = p.group.order() as i128;
    let mut values = Vec::with_capacity(n_classes.len());
    for &g in n_classes.reps() {
        let (w, n) = split_normalizer_element(gb, p, &nl_set, g)?;
        let orbit = twisted_orbit(gb, p, n, gb.inv(w));
        let s = orbit.iter().map(|&y| coeff_of(&top, gb, y)).fold(Rational::zero(), |a, b| a + b);
        let v = s * Rational::new(wl, orbit.len() as i128);
        if !v.is_integer() {
            return Err(Error::Other(alloc::format!("non-integral value {v} of the top character")));
        }
        values.push(v);
    }
    Ok(ClassFunction::from_rationals(&values))
}

/// Independent evaluation of `ρ̃_L` as the trace of `v ↦ n^{-1} e_L^L v w n`
/// on `QW_L`: `Σ_{v ∈ W_L} e_L^L(n v n^{-1} w^{-1} v^{-1})`.
pub fn rho_tilde_oracle(gb: &GroupBox, p: &Parabolic, dm: &DescentMatrix, nl: &[ElemId], n_classes: &Classes) -> Result<ClassFunction> {
    let top = top_coeffs(dm);
    let nl_set: HashSet<ElemId> = nl.iter().copied().collect();
    let mut values = Vec::with_capacity(n_classes.len());
    for &g in n_classes.reps() {
        let (w, n) = split_normalizer_element(gb, p, &nl_set, g)?;
        let (ninv, winv) = (gb.inv(n), gb.inv(w));
        let mut s = Rational::zero();
        for &v in p.group.elements() {
            let y = gb.mul(gb.mul(gb.mul(gb.mul(n, v), ninv), winv), gb.inv(v));
            s += coeff_of(&top, gb, y);
        }
        values.push(s);
    }
    Ok(ClassFunction::from_rationals(&values))
}
