//! Crystallographic root systems and the permutation representation of the
//! Weyl group on its roots.
//!
//! Generator numbering (label → internal index):
//!
//! | type | diagram                                   | labels            |
//! |------|-------------------------------------------|-------------------|
//! | A_n  | 1 - 2 - ... - n                           | `1`..`n`          |
//! | B_n  | 1 <= 2 - 3 - ... - n (node 1 short)       | `1`..`n`          |
//! | D_n  | 1' and 2 both joined to 3, then 3 - ... - n | `1'`, `2`..`n`  |
//! | E_n  | 1 - 3 - 4 - 5 - 6 (- 7 - 8), 2 joined to 4 | `1`..`n`         |
//!
//! Internal indices are zero based in label order; in type D index 0 is `1'`.
//!
//! Roots are indexed `0..2N`: `0..N` are the positive roots in the canonical
//! order (ascending height, ties broken by the lexicographically larger
//! coordinate vector first, so the simple roots come first in label order) and
//! `i + N` is the negative of root `i`.
//!
//! Group elements act on roots on the right. A word `s_{i1} s_{i2} ... s_{ik}`
//! applies `s_{i1}` first, so the permutation of a product `x y` is "apply
//! `x`, then `y`". Geometrically `r.w` is `w^{-1}(r)`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::Rational;

/// Irreducible families supported by [`CoxeterDatum::new`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CoxeterType {
    A,
    B,
    D,
    E,
}

impl CoxeterType {
    pub fn letter(self) -> char {
        match self {
            CoxeterType::A => 'A',
            CoxeterType::B => 'B',
            CoxeterType::D => 'D',
            CoxeterType::E => 'E',
        }
    }

    pub fn from_letter(c: char) -> Option<Self> {
        match c.to_ascii_uppercase() {
            'A' => Some(CoxeterType::A),
            'B' => Some(CoxeterType::B),
            'D' => Some(CoxeterType::D),
            'E' => Some(CoxeterType::E),
            _ => None,
        }
    }
}

/// Total orders on positive roots.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootOrder {
    /// Ascending height, ties broken by the lexicographically larger vector.
    Canonical,
    /// Ascending height, ties broken by the lexicographically smaller vector.
    ReversedTies,
}

/// A root system with its Cartan data, positive roots and generator labels.
#[derive(Debug, Clone)]
pub struct CoxeterDatum {
    name: String,
    family: Option<(CoxeterType, usize)>,
    cartan: Vec<Vec<i64>>,
    /// Symmetric integer form with `(a_i, a_j) = d_i * cartan[i][j]`.
    gram: Vec<Vec<i64>>,
    roots: Vec<Vec<i64>>,
    index: BTreeMap<Vec<i64>, usize>,
    labels: Vec<String>,
    simple: Vec<Element>,
}

impl CoxeterDatum {
    /// Builds the root system of an irreducible type.
    pub fn new(family: CoxeterType, rank: usize) -> Result<Self> {
        let bad = || Error::UnsupportedType { family: family.letter(), rank };
        let mut edges: Vec<(usize, usize, i64, i64)> = Vec::new();
        match family {
            CoxeterType::A => {
                if rank < 1 {
                    return Err(bad());
                }
                for i in 0..rank.saturating_sub(1) {
                    edges.push((i, i + 1, -1, -1));
                }
            }
            CoxeterType::B => {
                if rank < 2 {
                    return Err(bad());
                }
                edges.push((0, 1, -2, -1));
                for i in 1..rank - 1 {
                    edges.push((i, i + 1, -1, -1));
                }
            }
            CoxeterType::D => {
                if rank < 4 {
                    return Err(bad());
                }
                edges.push((0, 2, -1, -1));
                for i in 1..rank - 1 {
                    edges.push((i, i + 1, -1, -1));
                }
            }
            CoxeterType::E => {
                if !(6..=8).contains(&rank) {
                    return Err(bad());
                }
                edges.push((0, 2, -1, -1));
                edges.push((1, 3, -1, -1));
                for i in 2..rank - 1 {
                    edges.push((i, i + 1, -1, -1));
                }
            }
        }
        let mut cartan = vec![vec![0i64; rank]; rank];
        for (i, row) in cartan.iter_mut().enumerate() {
            row[i] = 2;
        }
        for &(i, j, cij, cji) in &edges {
            cartan[i][j] = cij;
            cartan[j][i] = cji;
        }
        let labels = (0..rank)
            .map(|i| {
                if family == CoxeterType::D && i == 0 {
                    "1'".to_string()
                } else {
                    (i + 1).to_string()
                }
            })
            .collect();
        let name = format!("{}{}", family.letter(), rank);
        let mut d = Self::from_cartan(name, cartan, labels)?;
        d.family = Some((family, rank));
        Ok(d)
    }

    /// Builds the root system of an arbitrary (possibly reducible)
    /// crystallographic Cartan matrix `cartan[i][j] = <a_i^v, a_j>`.
    pub fn from_cartan(name: String, cartan: Vec<Vec<i64>>, labels: Vec<String>) -> Result<Self> {
        let n = cartan.len();
        let gram = symmetrize(&cartan)?;
        // Orbit closure of the simple roots under the simple reflections.
        let mut found: BTreeMap<Vec<i64>, ()> = BTreeMap::new();
        let mut queue: Vec<Vec<i64>> = Vec::new();
        for i in 0..n {
            let mut v = vec![0i64; n];
            v[i] = 1;
            found.insert(v.clone(), ());
            queue.push(v);
        }
        while let Some(beta) = queue.pop() {
            for i in 0..n {
                let pairing: i64 = (0..n).map(|j| cartan[i][j] * beta[j]).sum();
                if pairing == 0 {
                    continue;
                }
                let mut img = beta.clone();
                img[i] -= pairing;
                if img.iter().all(|&x| x >= 0) && !found.contains_key(&img) {
                    found.insert(img.clone(), ());
                    queue.push(img);
                }
            }
        }
        let mut roots: Vec<Vec<i64>> = found.into_keys().collect();
        sort_roots(&mut roots, RootOrder::Canonical);
        let index = roots.iter().enumerate().map(|(k, r)| (r.clone(), k)).collect();
        let mut datum = CoxeterDatum {
            name,
            family: None,
            cartan,
            gram,
            roots,
            index,
            labels,
            simple: Vec::new(),
        };
        let simple = (0..n)
            .map(|i| {
                let imgs: Vec<Vec<i64>> = (0..n)
                    .map(|j| {
                        let mut v = vec![0i64; n];
                        v[j] = 1;
                        v[i] -= datum.cartan[i][j];
                        v
                    })
                    .collect();
                datum.element_from_simple_images(&imgs)
            })
            .collect::<Result<Vec<_>>>()?;
        datum.simple = simple;
        Ok(datum)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn family(&self) -> Option<(CoxeterType, usize)> {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    /// Number of positive roots `N`.
    pub fn num_positive(&self) -> usize {
        self.roots.len()
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Coordinates of positive root `i` in the simple-root basis.
    pub fn root(&self, i: usize) -> &[i64] {
        &self.roots[i]
    }

    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.roots
    }

    /// Signed coordinates of any root index in `0..2N`.
    pub fn root_vector(&self, i: usize) -> Vec<i64> {
        let n_pos = self.num_positive();
        if i < n_pos {
            self.roots[i].clone()
        } else {
            self.roots[i - n_pos].iter().map(|x| -x).collect()
        }
    }

    /// Index in `0..2N` of a root given by coordinates.
    pub fn index_of(&self, v: &[i64]) -> Option<usize> {
        if let Some(&k) = self.index.get(v) {
            return Some(k);
        }
        let neg: Vec<i64> = v.iter().map(|x| -x).collect();
        self.index.get(&neg).map(|&k| k + self.num_positive())
    }

    pub fn negate(&self, i: usize) -> usize {
        let n_pos = self.num_positive();
        if i < n_pos {
            i + n_pos
        } else {
            i - n_pos
        }
    }

    pub fn height(&self, i: usize) -> i64 {
        self.roots[i].iter().sum()
    }

    /// Index of the (unique) root of maximal height.
    pub fn highest_root(&self) -> usize {
        self.num_positive() - 1
    }

    /// Rank of each root in the requested order (`position[root] = place`).
    pub fn order_positions(&self, order: RootOrder) -> Vec<usize> {
        let mut sorted = self.roots.clone();
        sort_roots(&mut sorted, order);
        let mut pos = vec![0; self.num_positive()];
        for (place, r) in sorted.iter().enumerate() {
            pos[self.index[r]] = place;
        }
        pos
    }

    pub fn identity(&self) -> Element {
        Element::identity(self.num_positive())
    }

    /// The simple reflection with internal index `i`.
    pub fn simple_reflection(&self, i: usize) -> Result<Element> {
        self.simple
            .get(i)
            .cloned()
            .ok_or(Error::GeneratorOutOfRange { index: i, rank: self.rank() })
    }

    pub fn simple_reflections(&self) -> &[Element] {
        &self.simple
    }

    /// The reflection whose hyperplane is orthogonal to positive root `i`.
    pub fn reflection_for_root(&self, i: usize) -> Result<Element> {
        let n_pos = self.num_positive();
        if i >= n_pos {
            return Err(Error::RootOutOfRange { index: i, n_pos });
        }
        let n = self.rank();
        let beta = &self.roots[i];
        let bb = self.form(beta, beta);
        let imgs: Vec<Vec<i64>> = (0..n)
            .map(|j| {
                let mut e = vec![0i64; n];
                e[j] = 1;
                let c = 2 * self.form(beta, &e) / bb;
                let mut v = e;
                for k in 0..n {
                    v[k] -= c * beta[k];
                }
                v
            })
            .collect();
        self.element_from_simple_images(&imgs)
    }

    /// Invariant symmetric form on coordinate vectors.
    pub fn form(&self, x: &[i64], y: &[i64]) -> i64 {
        let n = self.rank();
        let mut s = 0;
        for i in 0..n {
            if x[i] == 0 {
                continue;
            }
            for j in 0..n {
                s += x[i] * self.gram[i][j] * y[j];
            }
        }
        s
    }

    /// The element whose right action sends simple root `j` to `imgs[j]`.
    pub fn element_from_simple_images(&self, imgs: &[Vec<i64>]) -> Result<Element> {
        let n = self.rank();
        let n_pos = self.num_positive();
        let mut perm = Vec::with_capacity(n_pos);
        for beta in &self.roots {
            let mut v = vec![0i64; n];
            for (j, &c) in beta.iter().enumerate() {
                if c != 0 {
                    for k in 0..n {
                        v[k] += c * imgs[j][k];
                    }
                }
            }
            let k = self
                .index_of(&v)
                .ok_or_else(|| Error::Other("linear map does not permute the roots".into()))?;
            perm.push(k as u8);
        }
        Ok(Element::from_perm(perm))
    }

    /// Product of simple reflections, left to right.
    pub fn element_from_word(&self, word: &[usize]) -> Result<Element> {
        let mut w = self.identity();
        for &i in word {
            let s = self.simple_reflection(i)?;
            w = w.compose(&s);
        }
        Ok(w)
    }

    /// Matrix of the right action on V: row `i` holds the coordinates of
    /// `a_i.w`.
    pub fn matrix(&self, w: &Element) -> Vec<Vec<i64>> {
        (0..self.rank()).map(|i| self.root_vector(w.image(i))).collect()
    }

    /// Left descent set `{i : l(s_i w) < l(w)}` as a bitmask.
    pub fn descent_mask(&self, w: &Element) -> u32 {
        let n_pos = self.num_positive();
        (0..self.rank()).filter(|&i| w.image(i) >= n_pos).fold(0, |m, i| m | (1 << i))
    }

    /// Lexicographically least reduced word (internal indices).
    pub fn reduced_word(&self, w: &Element) -> Vec<usize> {
        let mut word = Vec::new();
        let mut cur = w.clone();
        while cur.length() > 0 {
            let n_pos = self.num_positive();
            let i = (0..self.rank()).find(|&i| cur.image(i) >= n_pos).expect("nonidentity has a descent");
            word.push(i);
            cur = self.simple[i].compose(&cur);
        }
        word
    }

    /// Parses a word such as `43212345` or `1'2321'3431'2345` into internal
    /// indices. Each digit is one generator; a trailing `'` marks `1'` in
    /// type D.
    pub fn parse_word(&self, text: &str) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        let chars: Vec<char> = text.chars().collect();
        let mut k = 0;
        while k < chars.len() {
            let c = chars[k];
            let primed = chars.get(k + 1) == Some(&'\'');
            let mut label = String::new();
            label.push(c);
            if primed {
                label.push('\'');
            }
            let idx = self
                .labels
                .iter()
                .position(|l| *l == label)
                .ok_or_else(|| Error::Other(format!("unknown generator label {label:?} in {text:?}")))?;
            out.push(idx);
            k += if primed { 2 } else { 1 };
        }
        Ok(out)
    }

    pub fn format_word(&self, word: &[usize]) -> String {
        if word.is_empty() {
            return "()".to_string();
        }
        word.iter().map(|&i| self.labels[i].as_str()).collect()
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// The root sub-datum for the standard parabolic subgroup on `subset`,
    /// together with the inclusion of its positive roots into ours.
    pub fn parabolic(&self, subset: &[usize]) -> Result<(CoxeterDatum, Vec<usize>)> {
        let sub: Vec<Vec<i64>> = subset
            .iter()
            .map(|&i| subset.iter().map(|&j| self.cartan[i][j]).collect())
            .collect();
        let labels: Vec<String> = subset.iter().map(|&i| self.labels[i].clone()).collect();
        let name = format!("{}[{}]", self.name, labels.join(","));
        let d = CoxeterDatum::from_cartan(name, sub, labels)?;
        let n = self.rank();
        let inclusion = d
            .roots
            .iter()
            .map(|r| {
                let mut v = vec![0i64; n];
                for (k, &i) in subset.iter().enumerate() {
                    v[i] = r[k];
                }
                self.index[&v]
            })
            .collect();
        Ok((d, inclusion))
    }
}

fn sort_roots(roots: &mut [Vec<i64>], order: RootOrder) {
    roots.sort_by(|a, b| {
        let ha: i64 = a.iter().sum();
        let hb: i64 = b.iter().sum();
        ha.cmp(&hb).then_with(|| match order {
            RootOrder::Canonical => b.cmp(a),
            RootOrder::ReversedTies => a.cmp(b),
        })
    });
}

/// Finds integer root lengths `d_i` with `d_i c_ij = d_j c_ji` and returns the
/// symmetric form `d_i c_ij`.
fn symmetrize(cartan: &[Vec<i64>]) -> Result<Vec<Vec<i64>>> {
    let n = cartan.len();
    let mut d: Vec<Option<Rational>> = vec![None; n];
    for start in 0..n {
        if d[start].is_some() {
            continue;
        }
        d[start] = Some(Rational::from_integer(1));
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            for j in 0..n {
                if i != j && cartan[i][j] != 0 {
                    if cartan[j][i] == 0 {
                        return Err(Error::Other("Cartan matrix is not symmetrizable".into()));
                    }
                    let dj = d[i].unwrap() * Rational::new(cartan[i][j] as i128, cartan[j][i] as i128);
                    match d[j] {
                        None => {
                            d[j] = Some(dj);
                            stack.push(j);
                        }
                        Some(x) if x != dj => {
                            return Err(Error::Other("Cartan matrix is not symmetrizable".into()))
                        }
                        _ => {}
                    }
                }
            }
        }
    }
    let lcm = d
        .iter()
        .fold(1i128, |acc, x| num_integer::lcm(acc, *x.unwrap().denom()));
    let di: Vec<i64> = d.iter().map(|x| (x.unwrap() * lcm).to_integer() as i64).collect();
    Ok((0..n).map(|i| (0..n).map(|j| di[i] * cartan[i][j]).collect()).collect())
}

/// A Weyl group element as a permutation of the `2N` roots.
///
/// Only the images of the positive roots are stored; negation symmetry gives
/// the rest.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element {
    perm: Vec<u8>,
    length: u16,
}

impl Element {
    pub fn identity(n_pos: usize) -> Self {
        Element { perm: (0..n_pos as u8).collect(), length: 0 }
    }

    pub fn from_perm(perm: Vec<u8>) -> Self {
        let n_pos = perm.len();
        let length = perm.iter().filter(|&&x| x as usize >= n_pos).count() as u16;
        Element { perm, length }
    }

    pub fn num_positive(&self) -> usize {
        self.perm.len()
    }

    /// Image of root index `i` in `0..2N`.
    #[inline]
    pub fn image(&self, i: usize) -> usize {
        let n_pos = self.perm.len();
        if i < n_pos {
            self.perm[i] as usize
        } else {
            let j = self.perm[i - n_pos] as usize;
            if j < n_pos {
                j + n_pos
            } else {
                j - n_pos
            }
        }
    }

    pub fn positive_images(&self) -> &[u8] {
        &self.perm
    }

    pub fn length(&self) -> usize {
        self.length as usize
    }

    pub fn is_identity(&self) -> bool {
        self.length == 0
    }

    /// `self` followed by `other`.
    pub fn compose(&self, other: &Element) -> Element {
        let perm = (0..self.perm.len()).map(|i| other.image(self.perm[i] as usize) as u8).collect();
        Element::from_perm(perm)
    }

    pub fn inverse(&self) -> Element {
        let n_pos = self.perm.len();
        let mut perm = vec![0u8; n_pos];
        for i in 0..n_pos {
            let j = self.perm[i] as usize;
            if j < n_pos {
                perm[j] = i as u8;
            } else {
                perm[j - n_pos] = (i + n_pos) as u8;
            }
        }
        Element::from_perm(perm)
    }

    pub fn order(&self) -> usize {
        let mut k = 1;
        let mut p = self.clone();
        while !p.is_identity() {
            p = p.compose(self);
            k += 1;
        }
        k
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element(len={}, {:?})", self.length, self.perm)
    }
}
