//! Search for one linear character per cuspidal class whose induced
//! characters sum to a given class function.
//!
//! Every candidate `Ind φ` is encoded as an integer vector (coefficients
//! over a common power basis, cleared of denominators) and hashed with a
//! linear hash, so the hash of a sum is the sum of hashes. The pieces are
//! split into a prefix and a suffix; all suffix combinations go into a table
//! keyed by hash, and the prefix combinations are scanned in lexicographic
//! order looking up the complement. Every hash hit is verified exactly.

use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashMap;
use num_integer::Integer;

use crate::classfn::{induce_with_fusion, ClassFunction};
use crate::coxgroup::{class_fusion, Classes, ElemId, GroupBox, Subgroup};
use crate::error::{Error, Result};
use crate::lincar::{linear_characters, LinearCharacter};

/// A cuspidal class `w` with its centralizer and the induced characters of
/// all linear characters of the centralizer.
#[derive(Clone, Debug)]
pub struct CuspidalPiece {
    pub rep: ElemId,
    pub centralizer: Subgroup,
    pub classes: Classes,
    /// Classes of the centralizer → classes of the ambient group.
    pub fusion: Vec<usize>,
    pub characters: Vec<LinearCharacter>,
    pub induced: Vec<ClassFunction>,
}

impl CuspidalPiece {
    /// `C_W(rep)` must lie in `ambient`.
    pub fn new(gb: &GroupBox, rep: ElemId, ambient: &Subgroup, ambient_classes: &Classes) -> Result<Self> {
        let centralizer = Subgroup::full(gb).centralizer(gb, rep);
        if !centralizer.is_subgroup_of(ambient) {
            return Err(Error::Other("centralizer is not contained in the ambient group".into()));
        }
        let classes = centralizer.classes(gb);
        let fusion = class_fusion(&classes, ambient_classes)?;
        let characters = linear_characters(gb, &centralizer, &classes);
        let induced = characters
            .iter()
            .map(|c| induce_with_fusion(&c.to_class_function(), &classes, ambient_classes, &fusion))
            .collect();
        Ok(CuspidalPiece { rep, centralizer, classes, fusion, characters, induced })
    }
}

/// Sum of the chosen induced characters.
pub fn induced_sum(pieces: &[CuspidalPiece], choice: &[usize], len: usize) -> ClassFunction {
    let mut total = ClassFunction::constant(len, crate::Cyclotomic::zero());
    for (p, &c) in pieces.iter().zip(choice) {
        total = &total + &p.induced[c];
    }
    total
}

fn mix(mut z: u64) -> u64 {
    // splitmix64 finalizer
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

struct Encoder {
    field: u32,
    denominator: i128,
    width: usize,
}

impl Encoder {
    fn new<'a>(functions: impl Iterator<Item = &'a ClassFunction> + Clone) -> Self {
        let mut field = 1u32;
        let mut denominator = 1i128;
        for f in functions.clone() {
            for v in f.values() {
                field = field.lcm(&v.conductor());
                for c in v.coefficients() {
                    denominator = denominator.lcm(c.denom());
                }
            }
        }
        Encoder { field, denominator, width: field as usize }
    }

    fn encode(&self, f: &ClassFunction) -> Vec<i64> {
        let mut out = Vec::with_capacity(f.len() * self.width);
        for v in f.values() {
            for c in v.coefficients_in(self.field) {
                let scaled = c * crate::Rational::from_integer(self.denominator);
                out.push(scaled.to_integer() as i64);
            }
        }
        out
    }
}

fn hash_of(v: &[i64]) -> u64 {
    v.iter().enumerate().fold(0u64, |acc, (k, &x)| acc.wrapping_add((x as u64).wrapping_mul(mix(k as u64))))
}

/// Mixed-radix enumeration in lexicographic order.
fn combos(radices: &[usize]) -> impl Iterator<Item = Vec<usize>> + '_ {
    let total: usize = radices.iter().product();
    let mut cur = vec![0; radices.len()];
    (0..total).map(move |step| {
        if step > 0 {
            let mut i = radices.len();
            while i > 0 {
                i -= 1;
                cur[i] += 1;
                if cur[i] < radices[i] {
                    break;
                }
                cur[i] = 0;
            }
        }
        cur.clone()
    })
}

/// Lexicographically least choice of one character per piece with
/// `Σ Ind φ = target`, or `None`.
pub fn solve_assignment(pieces: &[CuspidalPiece], target: &ClassFunction) -> Option<Vec<usize>> {
    let degree: i128 = pieces.iter().map(|p| p.induced[0].degree().to_integer().unwrap_or(0)).sum();
    if target.degree().to_integer() != Some(degree) {
        return None;
    }
    if pieces.is_empty() {
        return target.values().iter().all(|v| v.is_zero()).then(Vec::new);
    }
    let all = pieces.iter().flat_map(|p| p.induced.iter()).chain(core::iter::once(target));
    let enc = Encoder::new(all);
    let hashes: Vec<Vec<u64>> = pieces.iter().map(|p| p.induced.iter().map(|f| hash_of(&enc.encode(f))).collect()).collect();
    let target_hash = hash_of(&enc.encode(target));

    let radices: Vec<usize> = pieces.iter().map(|p| p.induced.len()).collect();
    // Split minimizing the larger half.
    let split = (0..=radices.len())
        .min_by_key(|&s| {
            let a: u128 = radices[..s].iter().map(|&r| r as u128).product();
            let b: u128 = radices[s..].iter().map(|&r| r as u128).product();
            a.max(b)
        })
        .unwrap();
    let (ra, rb) = radices.split_at(split);

    let mut table: HashMap<u64, Vec<Vec<usize>>> = HashMap::new();
    for c in combos(rb) {
        let h = c.iter().enumerate().fold(0u64, |acc, (i, &k)| acc.wrapping_add(hashes[split + i][k]));
        table.entry(h).or_default().push(c);
    }
    for a in combos(ra) {
        let ha = a.iter().enumerate().fold(0u64, |acc, (i, &k)| acc.wrapping_add(hashes[i][k]));
        let need = target_hash.wrapping_sub(ha);
        if let Some(hits) = table.get(&need) {
            for b in hits {
                let mut choice = a.clone();
                choice.extend_from_slice(b);
                if induced_sum(pieces, &choice, target.len()) == *target {
                    return Some(choice);
                }
            }
        }
    }
    None
}
