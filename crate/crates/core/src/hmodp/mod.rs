//! H = Dist(SL₂) over F_p: reduction from the integral forms, the Frobenius
//! kernels H_n, the Frobenius endomorphism and the counit.
//!
//! [`FpElement`] stores an element as Σ f^(a)·φ(h)·e^(c) where each torus
//! factor φ is kept by its values on ℤ/p^N (see `torus`). Conversion to and
//! from the binom(h, b) basis of [`zform::Element`] is exact.

mod torus;

use crate::arith::{
    lucas, odd_prime, pow_u64, ArithError, BigInt, Integers, PLocal, PrimeField, Ring,
};
use crate::zform::{Element, Monomial};
use crate::Error;
use std::collections::BTreeMap;
use std::fmt;

pub(crate) use torus::level_for;
use torus::Values;

/// An element of H for a fixed odd prime.
///
/// Invariants: every stored (a, c) satisfies a, c < p^level, every value
/// vector has length p^level, and no stored vector is identically zero.
#[derive(Clone)]
pub struct FpElement {
    p: u64,
    level: u32,
    terms: BTreeMap<(u64, u64), Values>,
}

impl FpElement {
    pub fn zero(p: u64) -> Self {
        FpElement { p, level: 0, terms: BTreeMap::new() }
    }

    pub fn one(p: u64) -> Self {
        Self::scalar(p, 1)
    }

    pub fn scalar(p: u64, c: u64) -> Self {
        let mut out = Self::zero(p);
        out.insert(0, 0, vec![(c % p) as u32]);
        out
    }

    /// e^(c)
    pub fn e(p: u64, c: u64) -> Self {
        let level = level_for(c, p);
        let mut out = FpElement { p, level, terms: BTreeMap::new() };
        out.insert(0, c, vec![1; pow_u64(p, level) as usize]);
        out
    }

    /// f^(a)
    pub fn f(p: u64, a: u64) -> Self {
        let level = level_for(a, p);
        let mut out = FpElement { p, level, terms: BTreeMap::new() };
        out.insert(a, 0, vec![1; pow_u64(p, level) as usize]);
        out
    }

    /// binom(h, b)
    pub fn h(p: u64, b: u64) -> Self {
        let level = level_for(b, p);
        let mut out = FpElement { p, level, terms: BTreeMap::new() };
        out.insert(0, 0, torus::binom_values(p, level, b).to_vec());
        out
    }

    /// f^(a)·binom(h,b)·e^(c)
    pub fn monomial(p: u64, m: Monomial) -> Self {
        Self::f(p, m.a).mul(&Self::h(p, m.b)).mul(&Self::e(p, m.c))
    }

    /// A torus element h ↦ g(h) given by a function of the integer h.
    pub fn torus_fn(p: u64, level: u32, g: impl Fn(i64) -> u64) -> Self {
        let size = pow_u64(p, level);
        let mut out = FpElement { p, level, terms: BTreeMap::new() };
        out.insert(0, 0, (0..size).map(|h| (g(h as i64) % p) as u32).collect());
        out
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    /// N such that the torus factors are stored on ℤ/p^N.
    pub fn level(&self) -> u32 {
        self.level
    }

    fn size(&self) -> usize {
        pow_u64(self.p, self.level) as usize
    }

    fn insert(&mut self, a: u64, c: u64, v: Values) {
        if v.iter().any(|&x| x != 0) {
            self.terms.insert((a, c), v);
        } else {
            self.terms.remove(&(a, c));
        }
    }

    fn accumulate(&mut self, a: u64, c: u64, v: &[u32]) {
        let p = self.p as u32;
        match self.terms.get_mut(&(a, c)) {
            Some(slot) => {
                for (s, x) in slot.iter_mut().zip(v) {
                    *s = (*s + x) % p;
                }
                if slot.iter().all(|&x| x == 0) {
                    self.terms.remove(&(a, c));
                }
            }
            None => self.insert(a, c, v.to_vec()),
        }
    }

    /// The same element with torus factors stored on ℤ/p^level.
    pub fn lifted(&self, level: u32) -> Self {
        if level <= self.level {
            return self.clone();
        }
        FpElement {
            p: self.p,
            level,
            terms: self.terms.iter().map(|(k, v)| (*k, torus::tile(v, self.p, level))).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of (f-index, e-index) blocks.
    pub fn block_count(&self) -> usize {
        self.terms.len()
    }

    /// The (f-index, e-index) pairs present.
    pub fn blocks(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.terms.keys().copied()
    }

    /// Value of the torus factor of block (a, c) at h.
    pub fn torus_value(&self, a: u64, c: u64, h: i64) -> u64 {
        match self.terms.get(&(a, c)) {
            Some(v) => v[h.rem_euclid(self.size() as i64) as usize] as u64,
            None => 0,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.p, other.p);
        let level = self.level.max(other.level);
        let mut out = self.lifted(level);
        let other = other.lifted(level);
        for ((a, c), v) in &other.terms {
            out.accumulate(*a, *c, v);
        }
        out
    }

    pub fn scale(&self, s: u64) -> Self {
        let s = s % self.p;
        let p = self.p;
        let mut out = FpElement { p, level: self.level, terms: BTreeMap::new() };
        for ((a, c), v) in &self.terms {
            out.insert(*a, *c, v.iter().map(|&x| (x as u64 * s % p) as u32).collect());
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(self.p - 1)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn add_scalar(&self, s: i64) -> Self {
        self.add(&Self::scalar(self.p, s.rem_euclid(self.p as i64) as u64))
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.p, other.p);
        let p = self.p;
        let level = self.level.max(other.level);
        let lhs = self.lifted(level);
        let rhs = other.lifted(level);
        let size = pow_u64(p, level) as usize;
        let mut out = FpElement { p, level, terms: BTreeMap::new() };
        let mut buf = vec![0u32; size];
        for ((a1, c1), v1) in &lhs.terms {
            for ((a2, c2), v2) in &rhs.terms {
                for k in 0..=(*c1).min(*a2) {
                    let f_part = a2 - k;
                    let e_part = c1 - k;
                    let merge = lucas(a1 + f_part, *a1, p) * lucas(e_part + c2, *c2, p) % p;
                    if merge == 0 {
                        continue;
                    }
                    // f^(a1) φ1(h) [e^(c1) f^(a2)]_k φ2(h) e^(c2)
                    //   = f^(a1+A) φ1(h−2A)·binom(h+2k−a2−c1, k)·φ2(h−2C) e^(C+c2)
                    let straighten = torus::binom_values(p, level, k);
                    let s1 = offset(-2 * f_part as i64, size);
                    let sk = offset(2 * k as i64 - *a2 as i64 - *c1 as i64, size);
                    let s2 = offset(-2 * e_part as i64, size);
                    let (mut i1, mut ik, mut i2) = (s1, sk, s2);
                    for slot in buf.iter_mut() {
                        let x = v1[i1] as u64 * straighten[ik] as u64 % p * v2[i2] as u64;
                        *slot = (x * merge % p) as u32;
                        i1 = if i1 + 1 == size { 0 } else { i1 + 1 };
                        ik = if ik + 1 == size { 0 } else { ik + 1 };
                        i2 = if i2 + 1 == size { 0 } else { i2 + 1 };
                    }
                    out.accumulate(a1 + f_part, e_part + c2, &buf);
                }
            }
        }
        out
    }

    pub fn pow(&self, n: u64) -> Self {
        let mut acc = Self::one(self.p);
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

    /// Augmentation: the coefficient of the unit monomial.
    pub fn counit(&self) -> u64 {
        // Σ c_b binom(0, b) = c_0
        self.torus_value(0, 0, 0)
    }

    /// The Frobenius endomorphism: f^(a)φ(h)e^(c) ↦ f^(a/p)·φ(p·h)·e^(c/p) when
    /// p | a and p | c, and 0 otherwise. On the binom basis this is
    /// (a, b, c) ↦ (a/p, b/p, c/p) or 0 (Lucas).
    pub fn frobenius(&self) -> Self {
        let p = self.p;
        let level = self.level.saturating_sub(1);
        let size = self.size();
        let mut out = FpElement { p, level, terms: BTreeMap::new() };
        for ((a, c), v) in &self.terms {
            if a % p != 0 || c % p != 0 {
                continue;
            }
            let w: Values = (0..pow_u64(p, level) as usize).map(|l| v[(l * p as usize) % size]).collect();
            out.insert(a / p, c / p, w);
        }
        out
    }

    /// Is this element in the span of the H_n basis?
    pub fn in_level(&self, n: u32) -> bool {
        let bound = pow_u64(self.p, n);
        let period = bound as usize;
        self.terms.iter().all(|((a, c), v)| {
            *a < bound && *c < bound && v.iter().enumerate().all(|(h, x)| *x == v[h % period])
        })
    }

    /// Smallest n with this element in H_n.
    pub fn min_level(&self) -> u32 {
        (0..=self.level).find(|&n| self.in_level(n)).unwrap_or(self.level)
    }

    /// Per block (a, c), the torus factor of an element of H_n written in the
    /// monomials Π d_i(h)^{b_i} over the base-p digits d_0..d_{n-1} of h.
    /// Entries are indexed by b = Σ b_i p^i.
    pub fn digit_coordinates(&self, n: u32) -> Result<Vec<((u64, u64), Vec<u32>)>, Error> {
        if !self.in_level(n) {
            return Err(Error::NotInLevel { level: n });
        }
        let period = pow_u64(self.p, n) as usize;
        Ok(self
            .terms
            .iter()
            .map(|(k, v)| {
                let head = if v.len() >= period { &v[..period] } else { &v[..] };
                (*k, torus::values_to_digit_monomials(head, self.p, n.min(self.level)))
            })
            .collect())
    }

    /// The Chevalley involution e ↔ f, h ↦ −h.
    pub fn chevalley_involution(&self) -> Self {
        Self::from_element(&self.to_element().chevalley_involution())
    }

    /// The element in the f^(a)·binom(h,b)·e^(c) basis.
    pub fn to_element(&self) -> Element<PrimeField> {
        let field = PrimeField::new(self.p).expect("prime checked at construction");
        let mut out = Element::zero(field);
        for ((a, c), v) in &self.terms {
            let coeffs = torus::values_to_binom(v, self.p, self.level);
            for (b, x) in coeffs.iter().enumerate() {
                if *x != 0 {
                    out.add_term(Monomial::new(*a, b as u64, *c), *x as u64);
                }
            }
        }
        out
    }

    pub fn from_element(x: &Element<PrimeField>) -> Self {
        let p = x.ring().prime();
        let level = level_for(x.max_index(), p);
        let size = pow_u64(p, level) as usize;
        let mut blocks: BTreeMap<(u64, u64), Values> = BTreeMap::new();
        for (m, c) in x.terms() {
            blocks.entry((m.a, m.c)).or_insert_with(|| vec![0; size])[m.b as usize] = *c as u32;
        }
        let mut out = FpElement { p, level, terms: BTreeMap::new() };
        for ((a, c), coeffs) in blocks {
            out.insert(a, c, torus::binom_to_values(&coeffs, p, level));
        }
        out
    }
}

impl PartialEq for FpElement {
    fn eq(&self, other: &Self) -> bool {
        if self.p != other.p {
            return false;
        }
        let level = self.level.max(other.level);
        self.lifted(level).terms == other.lifted(level).terms
    }
}

impl Eq for FpElement {}

impl fmt::Debug for FpElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FpElement[p={}]({})", self.p, self.to_element())
    }
}

impl fmt::Display for FpElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_element())
    }
}

fn offset(shift: i64, size: usize) -> usize {
    shift.rem_euclid(size as i64) as usize
}

/// H for one odd prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Hmodp {
    p: u64,
}

impl Hmodp {
    /// Rejects p = 2 and non-primes.
    pub fn new(p: u64) -> Result<Self, Error> {
        Ok(Hmodp { p: odd_prime(p)? })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn field(&self) -> PrimeField {
        PrimeField::new(self.p).expect("checked prime")
    }

    pub fn e(&self, c: u64) -> FpElement {
        FpElement::e(self.p, c)
    }

    pub fn f(&self, a: u64) -> FpElement {
        FpElement::f(self.p, a)
    }

    pub fn h(&self, b: u64) -> FpElement {
        FpElement::h(self.p, b)
    }

    pub fn one(&self) -> FpElement {
        FpElement::one(self.p)
    }

    pub fn zero(&self) -> FpElement {
        FpElement::zero(self.p)
    }

    pub fn monomial(&self, m: Monomial) -> FpElement {
        FpElement::monomial(self.p, m)
    }

    /// e^(p^k)
    pub fn e_gen(&self, k: u32) -> FpElement {
        self.e(pow_u64(self.p, k))
    }

    /// f^(p^k)
    pub fn f_gen(&self, k: u32) -> FpElement {
        self.f(pow_u64(self.p, k))
    }

    /// Coefficientwise reduction of an integral element.
    pub fn reduce<R: ReduceModP>(&self, x: &Element<R>) -> Result<FpElement, Error> {
        let field = self.field();
        let ring = x.ring();
        let y = x.try_map_coeffs(field, |c| ring.reduce_coeff(c, self.p))?;
        Ok(FpElement::from_element(&y))
    }
}

/// Coefficient rings that reduce to F_p.
pub trait ReduceModP: Ring {
    fn reduce_coeff(&self, c: &Self::Elem, p: u64) -> Result<u64, ArithError>;
}

impl ReduceModP for Integers {
    fn reduce_coeff(&self, c: &BigInt, p: u64) -> Result<u64, ArithError> {
        Ok(PrimeField::new(p)?.from_bigint(c))
    }
}

impl ReduceModP for PLocal {
    fn reduce_coeff(&self, c: &crate::arith::PLocalRational, p: u64) -> Result<u64, ArithError> {
        if p == self.prime() {
            return Ok(c.reduce());
        }
        let field = PrimeField::new(p)?;
        let num = field.from_bigint(c.numer());
        let den = field.from_bigint(c.denom());
        field
            .checked_div(&num, &den)
            .map_err(|_| ArithError::NotPLocal { value: c.to_string(), p })
    }
}

/// All monomials with a, b, c < p^n; there are p^{3n} of them.
pub fn basis_hn(n: u32, p: u64) -> Vec<Monomial> {
    let bound = pow_u64(p, n);
    let mut out = Vec::with_capacity((bound * bound * bound) as usize);
    for a in 0..bound {
        for b in 0..bound {
            for c in 0..bound {
                out.push(Monomial::new(a, b, c));
            }
        }
    }
    out
}

/// Frobenius on the binom basis, directly from the monomial formula.
pub fn frobenius_on_basis(x: &Element<PrimeField>) -> Element<PrimeField> {
    let p = x.ring().prime();
    let mut out = Element::zero(x.ring());
    for (m, c) in x.terms() {
        if m.a % p == 0 && m.b % p == 0 && m.c % p == 0 {
            out.add_term(Monomial::new(m.a / p, m.b / p, m.c / p), *c);
        }
    }
    out
}

/// dim ker(Fr restricted to H_n), counted from the images of the basis.
pub fn frobenius_kernel_dim(n: u32, p: u64) -> usize {
    let field = PrimeField::new(p).expect("prime");
    let basis = basis_hn(n, p);
    let nonzero = basis
        .iter()
        .filter(|m| !frobenius_on_basis(&Element::monomial(field, **m)).is_zero())
        .count();
    basis.len() - nonzero
}
