//! Exact arithmetic in cyclotomic fields.
//!
//! A value is stored in the smallest field `Q(ζ_n)` containing it, as
//! rational coefficients on the power basis `1, ζ_n, ..., ζ_n^{φ(n)-1}`.
//! The conductor is normalized so that `n ≢ 2 (mod 4)`; with that choice the
//! representation is unique and `==` is coefficient equality.
//!
//! Literal syntax (shared with the table files): signed sums of terms `q`,
//! `E(n)^k`, `q*E(n)^k`, where `q` is an integer or a fraction `a/b` and the
//! exponent part `^k` may be omitted.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg;
use crate::Rational;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyclotomic {
    conductor: u32,
    coeffs: Vec<Rational>,
}

pub fn euler_phi(n: u32) -> u32 {
    let mut m = n;
    let mut phi = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            phi -= phi / p;
        }
        p += 1;
    }
    if m > 1 {
        phi -= phi / m;
    }
    phi
}

/// Coefficients (constant term first) of the n-th cyclotomic polynomial.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    // x^n - 1 divided by Φ_d for every proper divisor d.
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            num = poly_div_exact(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qlen = rem.len() - dd;
    let mut q = vec![0i64; qlen];
    for k in (0..qlen).rev() {
        let c = rem[k + dd];
        q[k] = c;
        if c != 0 {
            for (i, &d) in den.iter().enumerate() {
                rem[k + i] -= c * d;
            }
        }
    }
    q
}

/// Reduces a polynomial in ζ_n (coefficients of ζ^0, ζ^1, ...) modulo Φ_n.
fn reduce(mut v: Vec<Rational>, phi_poly: &[i64]) -> Vec<Rational> {
    let deg = phi_poly.len() - 1;
    if v.len() < deg {
        v.resize(deg, Rational::zero());
    }
    for k in (deg..v.len()).rev() {
        let c = v[k];
        if !c.is_zero() {
            for (i, &p) in phi_poly.iter().enumerate() {
                if p != 0 {
                    v[k - deg + i] -= c * Rational::from_integer(p as i128);
                }
            }
        }
    }
    v.truncate(deg);
    v
}

fn lcm(a: u32, b: u32) -> u32 {
    a.lcm(&b)
}

impl Cyclotomic {
    pub fn zero() -> Self {
        Self::from_rational(Rational::zero())
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(n as i128))
    }

    pub fn from_rational(q: Rational) -> Self {
        Cyclotomic { conductor: 1, coeffs: vec![q] }
    }

    /// `ζ_n^k = e^{2πik/n}`.
    pub fn root_of_unity(n: u32, k: i64) -> Self {
        assert!(n > 0);
        let e = k.rem_euclid(n as i64) as usize;
        let mut v = vec![Rational::zero(); n as usize];
        v[e] = Rational::one();
        Self::from_dense(n, v)
    }

    /// `e^{2πi t}` for a rational number of turns `t`.
    pub fn from_turn(t: Rational) -> Self {
        let den = *t.denom() as u32;
        Self::root_of_unity(den, (*t.numer()).rem_euclid(den as i128) as i64)
    }

    /// Builds a value from coefficients of `ζ_n^0, ..., ζ_n^{m-1}` (any `m`).
    pub fn from_dense(n: u32, v: Vec<Rational>) -> Self {
        let phi = cyclotomic_polynomial(n);
        let mut c = Cyclotomic { conductor: n, coeffs: reduce(v, &phi) };
        c.normalize();
        c
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// Power-basis coefficients in `Q(ζ_conductor)`.
    pub fn coefficients(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.conductor == 1 && self.coeffs[0].is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.conductor == 1
    }

    pub fn to_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.coeffs[0])
    }

    pub fn to_integer(&self) -> Option<i128> {
        self.to_rational().filter(|q| q.is_integer()).map(|q| q.to_integer())
    }

    /// Coefficients in `Q(ζ_m)` for a multiple `m` of the conductor.
    pub fn coefficients_in(&self, m: u32) -> Vec<Rational> {
        assert!(m % self.conductor == 0, "conductor {} does not divide {m}", self.conductor);
        let step = (m / self.conductor) as usize;
        let mut v = vec![Rational::zero(); m as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            v[k * step] = *c;
        }
        reduce(v, &cyclotomic_polynomial(m))
    }

    fn lifted_dense(&self, m: u32) -> Vec<Rational> {
        let step = (m / self.conductor) as usize;
        let mut v = vec![Rational::zero(); m as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            v[k * step] = *c;
        }
        v
    }

    /// Moves the value into the smallest cyclotomic field containing it.
    fn normalize(&mut self) {
        let n = self.conductor;
        if self.coeffs.iter().skip(1).all(|c| c.is_zero()) {
            let q = self.coeffs.first().copied().unwrap_or_else(Rational::zero);
            *self = Cyclotomic { conductor: 1, coeffs: vec![q] };
            return;
        }
        let mut divisors: Vec<u32> = (1..n).filter(|d| n % d == 0 && d % 4 != 2).collect();
        divisors.sort_unstable();
        let phi_n = cyclotomic_polynomial(n);
        for m in divisors {
            if m == 1 {
                continue;
            }
            let step = (n / m) as usize;
            let phi_m = euler_phi(m) as usize;
            let basis: linalg::Matrix = (0..phi_m)
                .map(|k| {
                    let mut v = vec![Rational::zero(); n as usize];
                    v[k * step] = Rational::one();
                    reduce(v, &phi_n)
                })
                .collect();
            if let Some(x) = linalg::solve_row(&basis, &self.coeffs) {
                *self = Cyclotomic { conductor: m, coeffs: x };
                return;
            }
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Cyclotomic::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn scale(&self, q: Rational) -> Self {
        if q.is_zero() {
            return Cyclotomic::zero();
        }
        Cyclotomic { conductor: self.conductor, coeffs: self.coeffs.iter().map(|c| *c * q).collect() }
    }

    /// Image under the Galois automorphism `ζ ↦ ζ^k` (k coprime to the
    /// conductor).
    pub fn galois(&self, k: i64) -> Self {
        let n = self.conductor;
        let mut v = vec![Rational::zero(); n as usize];
        for (j, c) in self.coeffs.iter().enumerate() {
            let e = (j as i64 * k).rem_euclid(n as i64) as usize;
            v[e] += *c;
        }
        Cyclotomic::from_dense(n, v)
    }

    pub fn complex_conjugate(&self) -> Self {
        self.galois(-1)
    }

    /// If the value is a root of unity `e^{2πi t}`, returns `t ∈ [0, 1)`.
    pub fn as_turn(&self) -> Option<Rational> {
        let n = self.conductor;
        let order = if n % 2 == 0 { n } else { 2 * n };
        for k in 0..order {
            if Cyclotomic::root_of_unity(order, k as i64) == *self {
                return Some(Rational::new(k as i128, order as i128));
            }
        }
        None
    }

    /// Parses the literal syntax described in the module docs.
    pub fn parse(text: &str) -> Result<Self> {
        Parser { s: text.as_bytes(), pos: 0, text }.parse()
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    text: &'a str,
}

impl Parser<'_> {
    fn err(&self, reason: &str) -> Error {
        Error::BadCyclotomic { text: self.text.to_string(), reason: format!("{reason} at offset {}", self.pos) }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Result<i128> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        core::str::from_utf8(&self.s[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.err("number out of range"))
    }

    fn root(&mut self) -> Result<Cyclotomic> {
        if !(self.eat(b'E') && self.eat(b'(')) {
            return Err(self.err("expected E(n)"));
        }
        let n = self.integer()?;
        if !self.eat(b')') {
            return Err(self.err("expected ')'"));
        }
        if n == 0 || n > u32::MAX as i128 {
            return Err(self.err("bad root of unity order"));
        }
        let mut k: i128 = 1;
        if self.eat(b'^') {
            let neg = self.eat(b'-');
            k = self.integer()?;
            if neg {
                k = -k;
            }
        }
        let k = k.rem_euclid(n) as i64;
        Ok(Cyclotomic::root_of_unity(n as u32, k))
    }

    fn term(&mut self) -> Result<Cyclotomic> {
        match self.peek() {
            Some(b'E') => self.root(),
            Some(c) if c.is_ascii_digit() => {
                let a = self.integer()?;
                let mut q = Rational::from_integer(a);
                if self.eat(b'/') {
                    let b = self.integer()?;
                    if b == 0 {
                        return Err(self.err("zero denominator"));
                    }
                    q = Rational::new(a, b);
                }
                if self.eat(b'*') {
                    Ok(self.root()?.scale(q))
                } else {
                    Ok(Cyclotomic::from_rational(q))
                }
            }
            _ => Err(self.err("expected a term")),
        }
    }

    fn parse(mut self) -> Result<Cyclotomic> {
        let mut acc = Cyclotomic::zero();
        let mut first = true;
        loop {
            let neg = if self.eat(b'-') {
                true
            } else if self.eat(b'+') || first {
                false
            } else if self.peek().is_none() {
                break;
            } else {
                return Err(self.err("expected '+' or '-'"));
            };
            let t = self.term()?;
            acc = if neg { &acc - &t } else { &acc + &t };
            first = false;
            if self.peek().is_none() {
                break;
            }
        }
        Ok(acc)
    }
}

impl<'a> Add<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        if self.conductor == rhs.conductor {
            let v = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| *a + *b).collect();
            let mut c = Cyclotomic { conductor: self.conductor, coeffs: v };
            c.normalize();
            return c;
        }
        let m = lcm(self.conductor, rhs.conductor);
        let mut v = self.lifted_dense(m);
        for (a, b) in v.iter_mut().zip(rhs.lifted_dense(m)) {
            *a += b;
        }
        Cyclotomic::from_dense(m, v)
    }
}

impl<'a> Sub<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self + &(-rhs)
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic { conductor: self.conductor, coeffs: self.coeffs.iter().map(|c| -*c).collect() }
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl<'a> Mul<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        if self.is_rational() {
            return rhs.scale(self.coeffs[0]);
        }
        if rhs.is_rational() {
            return self.scale(rhs.coeffs[0]);
        }
        let m = lcm(self.conductor, rhs.conductor);
        let a = self.lifted_dense(m);
        let b = rhs.lifted_dense(m);
        let mut v = vec![Rational::zero(); m as usize];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    v[(i + j) % m as usize] += *x * *y;
                }
            }
        }
        Cyclotomic::from_dense(m, v)
    }
}

macro_rules! owned_ops {
    ($tr:ident, $f:ident) => {
        impl $tr<Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $f(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$f(&rhs)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl From<i64> for Cyclotomic {
    fn from(n: i64) -> Self {
        Cyclotomic::from_integer(n)
    }
}

impl From<Rational> for Cyclotomic {
    fn from(q: Rational) -> Self {
        Cyclotomic::from_rational(q)
    }
}

impl core::iter::Sum for Cyclotomic {
    fn sum<I: Iterator<Item = Cyclotomic>>(iter: I) -> Self {
        iter.fold(Cyclotomic::zero(), |a, b| &a + &b)
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if neg {
                out.push('-');
            } else if !out.is_empty() {
                out.push('+');
            }
            if k == 0 {
                out.push_str(&a.to_string());
                continue;
            }
            if !a.is_one() {
                out.push_str(&a.to_string());
                out.push('*');
            }
            out.push_str(&format!("E({})", self.conductor));
            if k > 1 {
                out.push_str(&format!("^{k}"));
            }
        }
        f.write_str(&out)
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
