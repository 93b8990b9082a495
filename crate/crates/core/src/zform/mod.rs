//! The Kostant ℤ-form of U(sl₂) and its base changes.
//!
//! Elements are sparse combinations of the basis f^(a)·binom(h,b)·e^(c),
//! always kept in f-h-e order. Products are renormalized immediately.

mod display;
mod structure;

pub use structure::{
    ef_straighten, h_past_ef, hh_mul, hshift_expand, validate_hh_mul, Side, StructureCache,
};

use crate::arith::{ArithError, Ring, RingDescriptor};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// The basis element f^(a)·binom(h,b)·e^(c).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Monomial {
    pub a: u64,
    pub b: u64,
    pub c: u64,
}

impl Monomial {
    pub const UNIT: Monomial = Monomial { a: 0, b: 0, c: 0 };

    pub const fn new(a: u64, b: u64, c: u64) -> Self {
        Monomial { a, b, c }
    }

    /// Eigenvalue of ad(h): 2(c − a).
    pub fn weight(&self) -> i64 {
        2 * (self.c as i64 - self.a as i64)
    }
}

/// Σ_b c_b·binom(h, b), an element of the torus part.
#[derive(Debug, Clone, PartialEq)]
pub struct HPoly<R: Ring> {
    ring: R,
    coeffs: BTreeMap<u64, R::Elem>,
}

impl<R: Ring> HPoly<R> {
    pub fn zero(ring: R) -> Self {
        HPoly { ring, coeffs: BTreeMap::new() }
    }

    pub fn binom(ring: R, b: u64) -> Self {
        let mut out = Self::zero(ring);
        out.add_term(b, ring.one());
        out
    }

    pub fn add_term(&mut self, b: u64, c: R::Elem) {
        let ring = self.ring;
        let slot = self.coeffs.entry(b).or_insert_with(|| ring.zero());
        *slot = ring.add(slot, &c);
        if ring.is_zero(slot) {
            self.coeffs.remove(&b);
        }
    }

    pub fn coeff(&self, b: u64) -> R::Elem {
        self.coeffs.get(&b).cloned().unwrap_or_else(|| self.ring.zero())
    }

    pub fn iter(&self) -> impl Iterator<Item = (&u64, &R::Elem)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<u64> {
        self.coeffs.keys().next_back().copied()
    }

    /// Value at an integer h (for integer-like rings).
    pub fn eval(&self, h: i64) -> R::Elem {
        let ring = self.ring;
        self.coeffs.iter().fold(ring.zero(), |acc, (b, c)| {
            ring.add(&acc, &ring.mul(c, &ring.binom(h, *b)))
        })
    }

    pub fn to_element(&self) -> Element<R> {
        let mut out = Element::zero(self.ring);
        for (b, c) in &self.coeffs {
            out.add_term(Monomial::new(0, *b, 0), c.clone());
        }
        out
    }
}

/// A finite combination of basis monomials over the ring `R`.
#[derive(Debug, Clone, PartialEq)]
pub struct Element<R: Ring> {
    ring: R,
    terms: BTreeMap<Monomial, R::Elem>,
}

impl<R: Ring> Element<R> {
    pub fn zero(ring: R) -> Self {
        Element { ring, terms: BTreeMap::new() }
    }

    pub fn one(ring: R) -> Self {
        Self::monomial(ring, Monomial::UNIT)
    }

    pub fn monomial(ring: R, m: Monomial) -> Self {
        Self::term(ring, m, ring.one())
    }

    pub fn term(ring: R, m: Monomial, c: R::Elem) -> Self {
        let mut out = Self::zero(ring);
        out.add_term(m, c);
        out
    }

    pub fn scalar(ring: R, c: R::Elem) -> Self {
        Self::term(ring, Monomial::UNIT, c)
    }

    pub fn from_i64(ring: R, n: i64) -> Self {
        Self::scalar(ring, ring.from_i64(n))
    }

    /// e^(c)
    pub fn e(ring: R, c: u64) -> Self {
        Self::monomial(ring, Monomial::new(0, 0, c))
    }

    /// f^(a)
    pub fn f(ring: R, a: u64) -> Self {
        Self::monomial(ring, Monomial::new(a, 0, 0))
    }

    /// binom(h, b)
    pub fn h(ring: R, b: u64) -> Self {
        Self::monomial(ring, Monomial::new(0, b, 0))
    }

    pub fn ring(&self) -> R {
        self.ring
    }

    pub fn add_term(&mut self, m: Monomial, c: R::Elem) {
        let ring = self.ring;
        if ring.is_zero(&c) {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(slot) => {
                *slot = ring.add(slot, &c);
                if ring.is_zero(slot) {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &R::Elem)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> R::Elem {
        self.terms.get(m).cloned().unwrap_or_else(|| self.ring.zero())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest a, b or c index appearing.
    pub fn max_index(&self) -> u64 {
        self.terms.keys().map(|m| m.a.max(m.b).max(m.c)).max().unwrap_or(0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(self.ring, |c| self.ring.neg(c))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &R::Elem) -> Self {
        self.map_coeffs(self.ring, |c| self.ring.mul(c, s))
    }

    /// Applies `f` to every coefficient, landing in `target`.
    pub fn map_coeffs<S: Ring>(&self, target: S, f: impl Fn(&R::Elem) -> S::Elem) -> Element<S> {
        let mut out = Element::zero(target);
        for (m, c) in &self.terms {
            out.add_term(*m, f(c));
        }
        out
    }

    /// Like [`map_coeffs`](Self::map_coeffs) for maps that can fail.
    pub fn try_map_coeffs<S: Ring>(
        &self,
        target: S,
        f: impl Fn(&R::Elem) -> Result<S::Elem, ArithError>,
    ) -> Result<Element<S>, ArithError> {
        let mut out = Element::zero(target);
        for (m, c) in &self.terms {
            out.add_term(*m, f(c)?);
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.mul_with(other, StructureCache::global())
    }

    pub fn mul_with(&self, other: &Self, cache: &StructureCache) -> Self {
        let mut out = Element::zero(self.ring);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let scale = self.ring.mul(c1, c2);
                structure::mul_monomials(self.ring, cache, *m1, *m2, &scale, &mut out);
            }
        }
        out
    }

    pub fn pow(&self, n: u64) -> Self {
        let mut acc = Element::one(self.ring);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    /// The automorphism e^(r) ↦ f^(r), f^(s) ↦ e^(s), h ↦ −h.
    pub fn chevalley_involution(&self) -> Self {
        let ring = self.ring;
        let mut out = Element::zero(ring);
        for (m, c) in &self.terms {
            // binom(−h, b) = (−1)^b binom(h + b − 1, b)
            let mut neg_h = Element::zero(ring);
            for (j, coef) in hshift_expand(ring, m.b as i64 - 1, m.b).iter() {
                let coef = if m.b % 2 == 1 { ring.neg(coef) } else { coef.clone() };
                neg_h.add_term(Monomial::new(0, *j, 0), coef);
            }
            let image = Element::e(ring, m.a).mul(&neg_h).mul(&Element::f(ring, m.c));
            out = out.add(&image.scale(c));
        }
        out
    }

    /// Every term satisfies `pred`.
    pub fn all_terms(&self, pred: impl Fn(&Monomial) -> bool) -> bool {
        self.terms.keys().all(pred)
    }

    pub fn to_record(&self) -> ElementRecord {
        ElementRecord {
            ring: self.ring.descriptor(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| TermRecord { f: m.a, h: m.b, e: m.c, coef: self.ring.format(c) })
                .collect(),
        }
    }

    pub fn from_record(ring: R, record: &ElementRecord) -> Result<Self, ArithError> {
        let mut out = Element::zero(ring);
        for t in &record.terms {
            out.add_term(Monomial::new(t.f, t.h, t.e), ring.parse(&t.coef)?);
        }
        Ok(out)
    }
}

/// One serialized term {f: a, h: b, e: c, coef}.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub f: u64,
    pub h: u64,
    pub e: u64,
    pub coef: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementRecord {
    pub ring: RingDescriptor,
    pub terms: Vec<TermRecord>,
}

#[cfg(test)]
mod tests;
