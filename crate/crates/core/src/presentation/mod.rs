//! Words in the generators E_k = e^(p^k), F_k = f^(p^k) and their rewriting
//! into the normal form
//! F_0^{a_0}⋯F_n^{a_n} X_0^{b_0}⋯X_n^{b_n} E_n^{c_n}⋯E_0^{c_0}, all exponents < p,
//! using only the defining relations.

use crate::arith::{odd_prime, pow_u64};
use crate::hmodp::FpElement;
use crate::splitting::{XCombination, XMonomial};
use crate::Error;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

pub type NormalCombination = XCombination;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gen {
    E(u32),
    F(u32),
}

impl Gen {
    pub fn level(self) -> u32 {
        match self {
            Gen::E(k) | Gen::F(k) => k,
        }
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gen::E(k) => write!(f, "e{k}"),
            Gen::F(k) => write!(f, "f{k}"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<Gen>);

impl Word {
    pub fn new(gens: Vec<Gen>) -> Self {
        Word(gens)
    }

    pub fn gens(&self) -> &[Gen] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Σ p^{k_i} over the factors.
    pub fn weight(&self, p: u64) -> u64 {
        self.0.iter().map(|g| pow_u64(p, g.level())).sum()
    }

    /// Number of pairs i < j with w_i an E and w_j an F.
    pub fn disorder(&self) -> u64 {
        let mut es = 0;
        let mut out = 0;
        for g in &self.0 {
            match g {
                Gen::E(_) => es += 1,
                Gen::F(_) => out += es,
            }
        }
        out
    }

    pub fn measure(&self, p: u64) -> (u64, u64) {
        (self.weight(p), self.disorder())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(Gen::to_string).collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl FromStr for Word {
    type Err = Error;

    /// `e0 f1 e0`; whitespace between factors is optional and `1` is the
    /// empty word.
    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        if s.is_empty() || s == "1" {
            return Ok(Word::default());
        }
        let mut gens = Vec::new();
        let mut chars = s.chars().filter(|c| !c.is_whitespace()).peekable();
        while let Some(c) = chars.next() {
            let mut level = String::new();
            while let Some(d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                level.push(*d);
                chars.next();
            }
            let level: u32 =
                level.parse().map_err(|_| Error::Parse(format!("expected a level after `{c}` in `{s}`")))?;
            gens.push(match c {
                'e' | 'E' => Gen::E(level),
                'f' | 'F' => Gen::F(level),
                other => return Err(Error::Parse(format!("unknown generator `{other}` in `{s}`"))),
            });
        }
        Ok(Word(gens))
    }
}

/// Which minimal-level disordered pair to rewrite first.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Strategy {
    #[default]
    Leftmost,
    Rightmost,
}

/// Rewriting engine with memoized normal forms.
pub struct Straightener {
    p: u64,
    strategy: Strategy,
    memo: HashMap<Word, NormalCombination>,
    steps: u64,
}

impl Straightener {
    pub fn new(p: u64, strategy: Strategy) -> Result<Self, Error> {
        Ok(Straightener { p: odd_prime(p)?, strategy, memo: HashMap::new(), steps: 0 })
    }

    /// Rewrite steps taken so far, each checked against the measure.
    pub fn steps(&self) -> u64 {
        self.steps
    }

    pub fn straighten(&mut self, w: &Word) -> Result<NormalCombination, Error> {
        if let Some(nf) = self.memo.get(w) {
            return Ok(nf.clone());
        }
        let nf = self.rewrite(w)?;
        self.memo.insert(w.clone(), nf.clone());
        Ok(nf)
    }

    /// Normal form of a word of strictly smaller measure than `parent`.
    fn descend(&mut self, parent: &Word, child: &Word) -> Result<NormalCombination, Error> {
        let (from, to) = (parent.measure(self.p), child.measure(self.p));
        if to >= from {
            return Err(Error::MeasureNotDecreasing { from, to });
        }
        self.steps += 1;
        self.straighten(child)
    }

    fn rewrite(&mut self, w: &Word) -> Result<NormalCombination, Error> {
        let p = self.p;
        let gens = w.gens();
        let Some((i, j)) = self.chosen_pair(gens) else {
            return Ok(ordered_normal_form(gens, p));
        };
        let mu = gens[i].level().min(gens[j].level());

        // Factors below μ sit in an ordered prefix/suffix and split off.
        let alpha: Vec<Gen> = gens.iter().copied().filter(|g| matches!(g, Gen::F(k) if *k < mu)).collect();
        let beta: Vec<Gen> = gens.iter().copied().filter(|g| matches!(g, Gen::E(k) if *k < mu)).collect();
        if !alpha.is_empty() || !beta.is_empty() {
            let inner = Word(gens.iter().copied().filter(|g| g.level() >= mu).collect());
            let nf = self.descend(w, &inner)?;
            return Ok(wrap(&nf, &alpha, &beta, p));
        }

        // Bring an E F pair together and swap it.
        let (left, e_level, f_level, right) = if gens[i] == Gen::E(mu) {
            let m = (i + 1..gens.len()).find(|&m| matches!(gens[m], Gen::F(_))).expect("i < j");
            let mut left = gens[..m].to_vec();
            let e = left.remove(i);
            debug_assert!(gens[i + 1..m].iter().all(|g| matches!(g, Gen::E(_))));
            (left, e.level(), gens[m].level(), gens[m + 1..].to_vec())
        } else {
            let m = (0..j).rev().find(|&m| matches!(gens[m], Gen::E(_))).expect("i < j");
            let mut right = gens[m + 1..].to_vec();
            let f = right.remove(j - m - 1);
            debug_assert!(gens[m + 1..j].iter().all(|g| matches!(g, Gen::F(_))));
            (gens[..m].to_vec(), gens[m].level(), f.level(), right)
        };

        let swapped: Vec<Gen> =
            left.iter().copied().chain([Gen::F(f_level), Gen::E(e_level)]).chain(right.iter().copied()).collect();
        let mut out = self.descend(w, &Word(swapped))?;

        // [E_k, F_l] with k = μ or l = μ
        let n = e_level.max(f_level) - mu;
        let sign = if n % 2 == 0 { 1 } else { p - 1 };
        let run = |make: fn(u32) -> Gen| -> Vec<Gen> {
            (mu..mu + n).flat_map(|lvl| std::iter::repeat(make(lvl)).take(p as usize - 1)).collect()
        };
        let (middle, constant): (Vec<Gen>, i64) = match (n, e_level == mu) {
            (0, _) => (vec![], 0),
            (_, true) => (run(Gen::F), 1),
            (_, false) => (vec![], 1),
        };
        // X_μ sits before `tail` and is pushed through it
        let tail: Vec<Gen> = if n > 0 && e_level != mu {
            run(Gen::E).into_iter().chain(right.iter().copied()).collect()
        } else {
            right.clone()
        };
        let q: i64 = tail
            .iter()
            .map(|g| match g {
                Gen::E(k) if *k == mu => 1,
                Gen::F(k) if *k == mu => -1,
                _ => 0,
            })
            .sum();
        let reduced = Word(left.iter().copied().chain(middle).chain(tail).collect());
        let nf = self.descend(w, &reduced)?;
        let c = (constant + 2 * q).rem_euclid(p as i64) as u64;
        let term = times_x_plus(&nf, mu, c)?;
        out = out.add(&term.scale(sign));
        Ok(out)
    }

    /// A disordered pair (E before F) minimizing the smaller level.
    fn chosen_pair(&self, gens: &[Gen]) -> Option<(usize, usize)> {
        let mut best: Option<(u32, usize, usize)> = None;
        for (i, a) in gens.iter().enumerate() {
            let Gen::E(k) = a else { continue };
            for (j, b) in gens.iter().enumerate().skip(i + 1) {
                let Gen::F(l) = b else { continue };
                let key = (*k).min(*l);
                let better = match (best, self.strategy) {
                    (None, _) => true,
                    (Some((m, _, _)), Strategy::Leftmost) => key < m,
                    (Some((m, _, _)), Strategy::Rightmost) => key <= m,
                };
                if better {
                    best = Some((key, i, j));
                }
            }
        }
        best.map(|(_, i, j)| (i, j))
    }
}

/// Normal form of a word with no E before an F.
fn ordered_normal_form(gens: &[Gen], p: u64) -> NormalCombination {
    let mut fexp = Vec::new();
    let mut eexp = Vec::new();
    for g in gens {
        let (v, k) = match g {
            Gen::F(k) => (&mut fexp, *k as usize),
            Gen::E(k) => (&mut eexp, *k as usize),
        };
        if v.len() <= k {
            v.resize(k + 1, 0);
        }
        v[k] += 1;
    }
    let mut out = NormalCombination::new(p);
    // (E_k)^p = 0 = (F_k)^p
    if fexp.iter().chain(&eexp).all(|x| *x < p) {
        out.add_term(XMonomial::new(fexp, vec![], eexp), 1);
    }
    out
}

/// α·nf·β where α (β) are F's (E's) at levels below every level in nf.
fn wrap(nf: &NormalCombination, alpha: &[Gen], beta: &[Gen], p: u64) -> NormalCombination {
    let mut out = NormalCombination::new(p);
    'terms: for (xm, c) in nf.iter() {
        let mut fexp = xm.fexp().to_vec();
        let mut eexp = xm.eexp().to_vec();
        for g in alpha.iter().chain(beta) {
            let (v, k) = match g {
                Gen::F(k) => (&mut fexp, *k as usize),
                Gen::E(k) => (&mut eexp, *k as usize),
            };
            if v.len() <= k {
                v.resize(k + 1, 0);
            }
            v[k] += 1;
            if v[k] >= p {
                continue 'terms;
            }
        }
        out.add_term(XMonomial::new(fexp, xm.xexp().to_vec(), eexp), *c);
    }
    out
}

/// nf·(X_μ + c), for nf supported on levels ≥ μ.
fn times_x_plus(nf: &NormalCombination, mu: u32, c: u64) -> Result<NormalCombination, Error> {
    let p = nf.prime();
    let mu = mu as usize;
    let mut out = NormalCombination::new(p);
    for (xm, coef) in nf.iter() {
        let low = |v: &[u64]| v.iter().take(mu).any(|x| *x > 0);
        if low(xm.fexp()) || low(xm.xexp()) || low(xm.eexp()) {
            return Err(Error::Inconsistent(format!("{xm} has factors below level {mu}")));
        }
        // E_μ^{c_μ} X_μ = (X_μ − 2c_μ) E_μ^{c_μ}; X_μ commutes with the rest
        let c_mu = xm.eexp().get(mu).copied().unwrap_or(0);
        let mut xexp = xm.xexp().to_vec();
        if xexp.len() <= mu {
            xexp.resize(mu + 1, 0);
        }
        xexp[mu] += 1;
        if xexp[mu] == p {
            xexp[mu] = 1;
        }
        out.add_term(XMonomial::new(xm.fexp().to_vec(), xexp, xm.eexp().to_vec()), *coef);
        let shift = (c + 2 * (p - c_mu % p)) % p;
        out.add_term(xm.clone(), coef * shift);
    }
    Ok(out)
}

/// Straightens with the default strategy.
pub fn straighten(w: &Word, p: u64) -> Result<NormalCombination, Error> {
    Straightener::new(p, Strategy::default())?.straighten(w)
}

/// The product of the generators' divided powers in H.
pub fn eval_word(w: &Word, p: u64) -> FpElement {
    w.gens().iter().fold(FpElement::one(p), |acc, g| {
        let x = match g {
            Gen::E(k) => FpElement::e(p, pow_u64(p, *k)),
            Gen::F(k) => FpElement::f(p, pow_u64(p, *k)),
        };
        acc.mul(&x)
    })
}

#[cfg(test)]
mod tests;
