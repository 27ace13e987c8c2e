//! Linear characters of subgroups, given by values on generators or
//! enumerated through the abelianization.
//!
//! Values are roots of unity and are stored as turns: `t ∈ [0, 1)` stands
//! for `e^{2πit}`, so products become sums modulo 1.

use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashMap;
use num_traits::Zero;

use crate::classfn::ClassFunction;
use crate::coxgroup::{Classes, ElemId, GroupBox, Subgroup};
use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearCharacter {
    /// Generators the character was specified on.
    pub gens: Vec<ElemId>,
    /// Value on each generator.
    pub gen_turns: Vec<Rational>,
    /// Value on each class of the subgroup.
    pub class_turns: Vec<Rational>,
}

fn wrap(t: Rational) -> Rational {
    let f = t - t.floor();
    if f < Rational::zero() {
        f + Rational::from_integer(1)
    } else {
        f
    }
}

impl LinearCharacter {
    pub fn to_class_function(&self) -> ClassFunction {
        ClassFunction::new(self.class_turns.iter().map(|&t| Cyclotomic::from_turn(t)).collect())
    }

    pub fn gen_values(&self) -> Vec<Cyclotomic> {
        self.gen_turns.iter().map(|&t| Cyclotomic::from_turn(t)).collect()
    }

    pub fn kernel_size(&self, classes: &Classes) -> usize {
        self.class_turns
            .iter()
            .enumerate()
            .filter(|(_, t)| t.is_zero())
            .map(|(k, _)| classes.size(k))
            .sum()
    }

    pub fn is_trivial(&self) -> bool {
        self.class_turns.iter().all(|t| t.is_zero())
    }
}

/// Checks that the generator values define a homomorphism on `h` and
/// returns it. Fails with a witness if two products of generators reach the
/// same element with different values.
pub fn linear_character(gb: &GroupBox, h: &Subgroup, h_classes: &Classes, spec: &[(ElemId, Cyclotomic)]) -> Result<LinearCharacter> {
    let mut turns = Vec::with_capacity(spec.len());
    for (g, v) in spec {
        if !h.contains(*g) {
            return Err(Error::NotAMember);
        }
        turns.push(v.as_turn().ok_or_else(|| Error::NotARootOfUnity(alloc::format!("{v}")))?);
    }
    let gens: Vec<ElemId> = spec.iter().map(|(g, _)| *g).collect();
    // element -> (turn, parent, generator position)
    let mut seen: HashMap<ElemId, (Rational, ElemId, usize)> = HashMap::with_capacity(h.order());
    seen.insert(0, (Rational::zero(), 0, usize::MAX));
    let mut queue = vec![0 as ElemId];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        let tx = seen[&x].0;
        for (k, &g) in gens.iter().enumerate() {
            let y = gb.mul(x, g);
            let ty = wrap(tx + turns[k]);
            match seen.get(&y) {
                None => {
                    seen.insert(y, (ty, x, k));
                    queue.push(y);
                }
                Some(&(t_old, _, _)) if t_old != ty => {
                    let first = path_word(gb, &seen, &gens, y);
                    let mut second = path_word(gb, &seen, &gens, x);
                    second.extend(gb.word(g));
                    return Err(Error::InconsistentCharacter {
                        first,
                        second,
                        value_a: alloc::format!("{}", Cyclotomic::from_turn(t_old)),
                        value_b: alloc::format!("{}", Cyclotomic::from_turn(ty)),
                    });
                }
                _ => {}
            }
        }
    }
    if seen.len() != h.order() {
        return Err(Error::NotGenerating { got: seen.len(), expected: h.order() });
    }
    let class_turns = h_classes.reps().iter().map(|r| seen[r].0).collect();
    Ok(LinearCharacter { gens, gen_turns: turns, class_turns })
}

fn path_word(gb: &GroupBox, seen: &HashMap<ElemId, (Rational, ElemId, usize)>, gens: &[ElemId], mut x: ElemId) -> Vec<usize> {
    let mut steps = Vec::new();
    while x != 0 {
        let (_, parent, k) = seen[&x];
        steps.push(k);
        x = parent;
    }
    steps.reverse();
    steps.into_iter().flat_map(|k| gb.word(gens[k])).collect()
}

/// All linear characters of `h`, sorted by kernel size (largest first),
/// then by their values.
pub fn linear_characters(gb: &GroupBox, h: &Subgroup, h_classes: &Classes) -> Vec<LinearCharacter> {
    let derived = h.derived_subgroup(gb);
    // Cosets of the derived subgroup.
    let mut label: HashMap<ElemId, usize> = HashMap::with_capacity(h.order());
    let mut reps: Vec<ElemId> = Vec::new();
    for &x in h.elements() {
        if label.contains_key(&x) {
            continue;
        }
        let id = reps.len();
        reps.push(x);
        for &k in derived.elements() {
            label.insert(gb.mul(x, k), id);
        }
    }
    let q = reps.len();
    let qmul = |a: usize, b: usize| label[&gb.mul(reps[a], reps[b])];
    let identity = label[&0];

    // Extend characters one generator at a time.
    let mut chars: Vec<Vec<Option<Rational>>> = {
        let mut c = vec![None; q];
        c[identity] = Some(Rational::zero());
        vec![c]
    };
    let mut members = vec![identity];
    for &g in h.generators() {
        let qg = label[&g];
        let mut m = 1;
        let mut p = qg;
        while !members.contains(&p) {
            p = qmul(p, qg);
            m += 1;
        }
        if m == 1 {
            continue;
        }
        // powers qg^j for j < m
        let mut powers = vec![identity];
        for j in 1..m {
            powers.push(qmul(powers[j - 1], qg));
        }
        let mut next = Vec::new();
        for c in &chars {
            let target = c[p].unwrap();
            for j in 0..m {
                let t = wrap((target + Rational::from_integer(j as i128)) / Rational::from_integer(m as i128));
                let mut d = c.clone();
                for &s in &members {
                    for (e, &pw) in powers.iter().enumerate().skip(1) {
                        let x = qmul(s, pw);
                        d[x] = Some(wrap(c[s].unwrap() + t * Rational::from_integer(e as i128)));
                    }
                }
                next.push(d);
            }
        }
        let mut new_members = Vec::new();
        for &s in &members {
            for &pw in &powers {
                new_members.push(qmul(s, pw));
            }
        }
        new_members.sort_unstable();
        new_members.dedup();
        members = new_members;
        chars = next;
    }
    debug_assert_eq!(members.len(), q);
    let mut out: Vec<(usize, LinearCharacter)> = chars
        .into_iter()
        .map(|c| {
            let lc = LinearCharacter {
                gens: h.generators().to_vec(),
                gen_turns: h.generators().iter().map(|g| c[label[g]].unwrap()).collect(),
                class_turns: h_classes.reps().iter().map(|r| c[label[r]].unwrap()).collect(),
            };
            (lc.kernel_size(h_classes), lc)
        })
        .collect();
    out.sort_by(|a, b| b.0.cmp(&a.0).then_with(|| a.1.class_turns.cmp(&b.1.class_turns)));
    out.into_iter().map(|(_, lc)| lc).collect()
}
