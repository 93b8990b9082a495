use crate::arith::{digits, from_digits};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// Exponents of (f)^{a_0}⋯(f^(p^n))^{a_n} X_0^{b_0}⋯X_n^{b_n} (e^(p^n))^{c_n}⋯(e)^{c_0}.
///
/// Trailing zero exponents are trimmed, so equal monomials compare equal
/// whatever level they were built at.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct XMonomial {
    fexp: Vec<u64>,
    xexp: Vec<u64>,
    eexp: Vec<u64>,
}

fn trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

impl XMonomial {
    pub fn new(fexp: Vec<u64>, xexp: Vec<u64>, eexp: Vec<u64>) -> Self {
        XMonomial { fexp: trim(fexp), xexp: trim(xexp), eexp: trim(eexp) }
    }

    pub fn unit() -> Self {
        Self::new(vec![], vec![], vec![])
    }

    /// The monomial whose exponents are the base-p digits of a, b and c.
    pub fn from_indices(a: u64, b: u64, c: u64, p: u64) -> Self {
        Self::new(digits(a, p), digits(b, p), digits(c, p))
    }

    /// (Σ a_i p^i, Σ b_i p^i, Σ c_i p^i)
    pub fn indices(&self, p: u64) -> (u64, u64, u64) {
        (from_digits(&self.fexp, p), from_digits(&self.xexp, p), from_digits(&self.eexp, p))
    }

    pub fn fexp(&self) -> &[u64] {
        &self.fexp
    }

    pub fn xexp(&self) -> &[u64] {
        &self.xexp
    }

    pub fn eexp(&self) -> &[u64] {
        &self.eexp
    }

    /// b_0 + b_1 p + … + b_n p^n
    pub fn weight(&self, p: u64) -> u64 {
        from_digits(&self.xexp, p)
    }

    /// Number of generator levels used.
    pub fn levels(&self) -> usize {
        self.fexp.len().max(self.xexp.len()).max(self.eexp.len())
    }

    /// Every exponent moved one level up.
    pub fn shifted(&self) -> Self {
        let up = |v: &[u64]| if v.is_empty() { vec![] } else { std::iter::once(0).chain(v.iter().copied()).collect() };
        XMonomial { fexp: up(&self.fexp), xexp: up(&self.xexp), eexp: up(&self.eexp) }
    }

    /// Whether every exponent is below p.
    pub fn is_reduced(&self, p: u64) -> bool {
        self.fexp.iter().chain(&self.xexp).chain(&self.eexp).all(|x| *x < p)
    }
}

impl fmt::Display for XMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut factors = Vec::new();
        let mut push = |name: &str, i: usize, e: u64| match e {
            0 => {}
            1 => factors.push(format!("{name}{i}")),
            _ => factors.push(format!("{name}{i}^{e}")),
        };
        for (i, e) in self.fexp.iter().enumerate() {
            push("f", i, *e);
        }
        for (i, e) in self.xexp.iter().enumerate() {
            push("X", i, *e);
        }
        for (i, e) in self.eexp.iter().enumerate().rev() {
            push("e", i, *e);
        }
        if factors.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", factors.join(" "))
        }
    }
}

/// A sparse F_p-combination of X-monomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XCombination {
    p: u64,
    terms: BTreeMap<XMonomial, u64>,
}

impl XCombination {
    pub fn new(p: u64) -> Self {
        XCombination { p, terms: BTreeMap::new() }
    }

    pub fn monomial(p: u64, xm: XMonomial) -> Self {
        let mut out = Self::new(p);
        out.add_term(xm, 1);
        out
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn add_term(&mut self, xm: XMonomial, c: u64) {
        let p = self.p;
        let slot = self.terms.entry(xm.clone()).or_insert(0);
        *slot = (*slot + c % p) % p;
        if *slot == 0 {
            self.terms.remove(&xm);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (xm, c) in &other.terms {
            out.add_term(xm.clone(), *c);
        }
        out
    }

    pub fn scale(&self, s: u64) -> Self {
        let mut out = Self::new(self.p);
        for (xm, c) in &self.terms {
            out.add_term(xm.clone(), c * (s % self.p));
        }
        out
    }

    pub fn coeff(&self, xm: &XMonomial) -> u64 {
        self.terms.get(xm).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&XMonomial, &u64)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn shifted(&self) -> Self {
        XCombination { p: self.p, terms: self.terms.iter().map(|(k, v)| (k.shifted(), *v)).collect() }
    }
}

impl fmt::Display for XCombination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // most e/f factors first, then highest weight
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|(x, _), (y, _)| {
            let key = |m: &XMonomial| (m.fexp.iter().chain(&m.eexp).sum::<u64>(), m.weight(self.p));
            key(y).cmp(&key(x)).then_with(|| x.cmp(y))
        });
        let parts: Vec<String> = terms
            .into_iter()
            .map(|(xm, c)| match (*c, xm.levels()) {
                (c, 0) => c.to_string(),
                (1, _) => xm.to_string(),
                (c, _) => format!("{c} {xm}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
