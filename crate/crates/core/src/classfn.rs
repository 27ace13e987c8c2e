//! Cyclotomic-valued class functions and induction.

use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use crate::coxgroup::{class_fusion, Classes, GroupBox, Subgroup};
use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::Rational;

/// One value per conjugacy class, in the carrier's class order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ClassFunction {
    values: Vec<Cyclotomic>,
}

impl ClassFunction {
    pub fn new(values: Vec<Cyclotomic>) -> Self {
        ClassFunction { values }
    }

    pub fn from_integers(values: &[i64]) -> Self {
        ClassFunction { values: values.iter().map(|&v| Cyclotomic::from_integer(v)).collect() }
    }

    pub fn from_rationals(values: &[Rational]) -> Self {
        ClassFunction { values: values.iter().map(|&v| Cyclotomic::from_rational(v)).collect() }
    }

    pub fn constant(len: usize, v: Cyclotomic) -> Self {
        ClassFunction { values: alloc::vec![v; len] }
    }

    /// `g ↦ (-1)^{l(g)}` on the given classes.
    pub fn sign(gb: &GroupBox, classes: &Classes) -> Self {
        let v = classes.reps().iter().map(|&r| if gb.length(r) % 2 == 0 { 1 } else { -1 }).collect::<Vec<i64>>();
        Self::from_integers(&v)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[Cyclotomic] {
        &self.values
    }

    pub fn value(&self, k: usize) -> &Cyclotomic {
        &self.values[k]
    }

    /// Value on the identity class (always class 0).
    pub fn degree(&self) -> &Cyclotomic {
        &self.values[0]
    }

    /// Integer values, if every value is a rational integer.
    pub fn to_integers(&self) -> Option<Vec<i64>> {
        self.values.iter().map(|v| v.to_integer().map(|x| x as i64)).collect()
    }

    pub fn scale(&self, q: Rational) -> Self {
        ClassFunction { values: self.values.iter().map(|v| v.scale(q)).collect() }
    }

    /// Classes where the two functions differ.
    pub fn diff_classes(&self, other: &ClassFunction) -> Vec<usize> {
        (0..self.len()).filter(|&k| self.values[k] != other.values[k]).collect()
    }

    /// Restriction to a subgroup along a class fusion map.
    pub fn restrict(&self, fusion: &[usize]) -> Self {
        ClassFunction { values: fusion.iter().map(|&k| self.values[k].clone()).collect() }
    }

    fn zip(&self, other: &Self, f: impl Fn(&Cyclotomic, &Cyclotomic) -> Cyclotomic) -> Self {
        assert_eq!(self.len(), other.len(), "class functions on different groups");
        ClassFunction { values: self.values.iter().zip(&other.values).map(|(a, b)| f(a, b)).collect() }
    }
}

impl Add for &ClassFunction {
    type Output = ClassFunction;
    fn add(self, rhs: &ClassFunction) -> ClassFunction {
        self.zip(rhs, |a, b| a + b)
    }
}

impl Sub for &ClassFunction {
    type Output = ClassFunction;
    fn sub(self, rhs: &ClassFunction) -> ClassFunction {
        self.zip(rhs, |a, b| a - b)
    }
}

impl Mul for &ClassFunction {
    type Output = ClassFunction;
    fn mul(self, rhs: &ClassFunction) -> ClassFunction {
        self.zip(rhs, |a, b| a * b)
    }
}

impl Neg for &ClassFunction {
    type Output = ClassFunction;
    fn neg(self) -> ClassFunction {
        ClassFunction { values: self.values.iter().map(|v| -v).collect() }
    }
}

/// Induces `phi` (a class function of `h`) to `g`, which must contain `h`.
pub fn induce(phi: &ClassFunction, h: &Subgroup, h_classes: &Classes, g_classes: &Classes) -> Result<ClassFunction> {
    if h.order() == 0 || g_classes.group_order() % h.order() != 0 {
        return Err(Error::Other("subgroup order does not divide the group order".into()));
    }
    let fusion = class_fusion(h_classes, g_classes)?;
    Ok(induce_with_fusion(phi, h_classes, g_classes, &fusion))
}

/// `Ind φ(C) = |C_G(g)| / |H| · Σ_{c ↦ C} |c| φ(c)`.
pub fn induce_with_fusion(phi: &ClassFunction, h_classes: &Classes, g_classes: &Classes, fusion: &[usize]) -> ClassFunction {
    let mut sums: Vec<Cyclotomic> = alloc::vec![Cyclotomic::zero(); g_classes.len()];
    for (c, &k) in fusion.iter().enumerate() {
        let term = phi.value(c).scale(Rational::from_integer(h_classes.size(c) as i128));
        sums[k] = &sums[k] + &term;
    }
    let h_order = h_classes.group_order() as i128;
    let values = sums
        .into_iter()
        .enumerate()
        .map(|(k, s)| s.scale(Rational::new(g_classes.centralizer_order(k) as i128, h_order)))
        .collect();
    ClassFunction { values }
}
