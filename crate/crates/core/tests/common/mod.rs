//! Oracles that share no code with the library's multiplication routines.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use sl2dist::arith::Integers;
use sl2dist::zform::{Element, Monomial};
use std::collections::BTreeMap;

fn factorial(n: u64) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

/// binom(n, k) for any integer n, as n(n−1)⋯(n−k+1)/k!.
pub fn binom(n: i64, k: u64) -> BigInt {
    let num: BigInt = (0..k as i64).map(|i| BigInt::from(n - i)).product();
    num / factorial(k)
}

/// Elements of U(sl₂) ⊗ ℚ in the PBW basis f^a h^b e^c, keyed by (a, b, c).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Pbw(pub BTreeMap<(u64, u64, u64), BigRational>);

#[derive(Clone, Copy, Debug)]
pub enum Letter {
    E,
    F,
    H,
}

impl Pbw {
    pub fn one() -> Self {
        let mut m = BTreeMap::new();
        m.insert((0, 0, 0), BigRational::one());
        Pbw(m)
    }

    fn add_term(&mut self, key: (u64, u64, u64), c: BigRational) {
        let slot = self.0.entry(key).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.0.remove(&key);
        }
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        let mut out = Pbw::default();
        for (k, c) in &self.0 {
            out.add_term(*k, c * s);
        }
        out
    }

    /// Right multiplication by one generator, using
    /// e^c h = (h − 2c) e^c, h^b f = f (h − 2)^b and
    /// e^c f = f e^c + c (h − c + 1) e^{c−1}.
    pub fn times(&self, g: Letter) -> Self {
        let mut out = Pbw::default();
        for (&(a, b, c), coef) in &self.0 {
            match g {
                Letter::E => out.add_term((a, b, c + 1), coef.clone()),
                Letter::H => {
                    out.add_term((a, b + 1, c), coef.clone());
                    out.add_term((a, b, c), coef * BigRational::from_integer(BigInt::from(-2 * c as i64)));
                }
                Letter::F => {
                    // f^{a+1} (h − 2)^b e^c
                    for j in 0..=b {
                        let w = binom(b as i64, j) * BigInt::from(-2).pow((b - j) as u32);
                        out.add_term((a + 1, j, c), coef * BigRational::from_integer(w));
                    }
                    if c > 0 {
                        let cc = BigRational::from_integer(BigInt::from(c));
                        out.add_term((a, b + 1, c - 1), coef * &cc);
                        let shift = BigRational::from_integer(BigInt::from(1 - c as i64));
                        out.add_term((a, b, c - 1), coef * &cc * shift);
                    }
                }
            }
        }
        out
    }

    pub fn times_word(&self, word: &[Letter]) -> Self {
        word.iter().fold(self.clone(), |acc, g| acc.times(*g))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Pbw::default();
        for (&(a, b, c), coef) in &other.0 {
            let mut word = vec![Letter::F; a as usize];
            word.extend(std::iter::repeat(Letter::H).take(b as usize));
            word.extend(std::iter::repeat(Letter::E).take(c as usize));
            for (k, x) in self.times_word(&word).0 {
                out.add_term(k, x * coef);
            }
        }
        out
    }
}

/// Coefficients of h(h−1)⋯(h−b+1) in powers of h.
fn falling(b: u64) -> Vec<BigInt> {
    let mut poly = vec![BigInt::one()];
    for i in 0..b as i64 {
        let mut next = vec![BigInt::zero(); poly.len() + 1];
        for (j, c) in poly.iter().enumerate() {
            next[j + 1] += c;
            next[j] -= c * BigInt::from(i);
        }
        poly = next;
    }
    poly
}

/// f^(a) binom(h, b) e^(c) written out as f^a h^j e^c / (a! b! c!).
pub fn to_pbw(x: &Element<Integers>) -> Pbw {
    let mut out = Pbw::default();
    for (Monomial { a, b, c }, coef) in x.terms() {
        let denom = factorial(*a) * factorial(*b) * factorial(*c);
        for (j, s) in falling(*b).into_iter().enumerate() {
            if !s.is_zero() {
                out.add_term((*a, j as u64, *c), BigRational::new(coef * s, denom.clone()));
            }
        }
    }
    out
}

/// e^r f^s / (r! s!) by generator-at-a-time rewriting.
pub fn divided_ef(r: u64, s: u64) -> Pbw {
    let mut word = vec![Letter::E; r as usize];
    word.extend(std::iter::repeat(Letter::F).take(s as usize));
    let denom = factorial(r) * factorial(s);
    Pbw::one().times_word(&word).scale(&BigRational::new(BigInt::one(), denom))
}

/// The integral Weyl module V(m): f^(a) binom(h,b) e^(c) applied to v_i.
pub fn weyl_apply(m: u64, mono: Monomial, i: u64) -> Option<(u64, BigInt)> {
    let Monomial { a, b, c } = mono;
    if c > i {
        return None;
    }
    let j = i - c;
    if j + a > m {
        return None;
    }
    let coef = binom((m - i + c) as i64, c) * binom(m as i64 - 2 * j as i64, b) * binom((j + a) as i64, a);
    (!coef.is_zero()).then_some((j + a, coef))
}

/// An element applied to a vector of V(m).
pub fn weyl_act(m: u64, x: &Element<Integers>, v: &BTreeMap<u64, BigInt>) -> BTreeMap<u64, BigInt> {
    let mut out: BTreeMap<u64, BigInt> = BTreeMap::new();
    for (i, vi) in v {
        for (mono, coef) in x.terms() {
            if let Some((k, c)) = weyl_apply(m, *mono, *i) {
                *out.entry(k).or_insert_with(BigInt::zero) += c * coef * vi;
            }
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Whether x·y and the composite of x and y act alike on every basis vector
/// of V(m).
pub fn weyl_product_agrees(m: u64, x: &Element<Integers>, y: &Element<Integers>, xy: &Element<Integers>) -> bool {
    (0..=m).all(|i| {
        let v: BTreeMap<u64, BigInt> = [(i, BigInt::one())].into();
        weyl_act(m, x, &weyl_act(m, y, &v)) == weyl_act(m, xy, &v)
    })
}
