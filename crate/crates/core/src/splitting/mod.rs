//! The elements X_k and t_k of H, the relations of the presentation, the
//! X-basis of H_n and the unital Frobenius section θ.

mod xbasis;

use crate::arith::{factorial, inv_mod, pow_u64, PrimeField, Ring};
use crate::hmodp::{FpElement, Hmodp};
use crate::zform::ElementRecord;
use crate::Error;
use serde::Serialize;
use std::collections::HashMap;
use std::sync::{Arc, RwLock};

pub use xbasis::{XCombination, XMonomial};

/// What a [`RelationReport`] checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    Relation(u8),
    TIdempotent,
    TRecursion,
    Orthogonality,
}

impl std::fmt::Display for Check {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Check::Relation(id) => write!(f, "relation {id}"),
            Check::TIdempotent => write!(f, "t_k^2 = t_k"),
            Check::TRecursion => write!(f, "t_k recursion"),
            Check::Orthogonality => write!(f, "orthogonal idempotents"),
        }
    }
}

/// Outcome of one identity check in H.
#[derive(Clone, Debug, Serialize)]
pub struct RelationReport {
    pub check: Check,
    pub p: u64,
    pub k: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    pub passed: bool,
    /// Which equation failed, for checks made of several.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub part: Option<String>,
    /// LHS − RHS of the failing equation.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<ElementRecord>,
}

impl RelationReport {
    fn new(check: Check, p: u64, k: u32, n: Option<u32>) -> Self {
        RelationReport { check, p, k, n, passed: true, part: None, witness: None }
    }

    /// Records `lhs = rhs`; only the first failure is kept.
    fn expect_eq(&mut self, part: &str, lhs: &FpElement, rhs: &FpElement) {
        if !self.passed {
            return;
        }
        let diff = lhs.sub(rhs);
        if !diff.is_zero() {
            self.passed = false;
            self.part = Some(part.to_string());
            self.witness = Some(diff.to_element().to_record());
        }
    }
}

/// X_k, t_k and the X-basis for one prime, with memoized powers.
pub struct Splitting {
    h: Hmodp,
    xs: RwLock<HashMap<u32, FpElement>>,
    x_powers: RwLock<HashMap<Vec<u64>, Arc<FpElement>>>,
}

impl Splitting {
    pub fn new(p: u64) -> Result<Self, Error> {
        Ok(Splitting {
            h: Hmodp::new(p)?,
            xs: RwLock::new(HashMap::new()),
            x_powers: RwLock::new(HashMap::new()),
        })
    }

    pub fn prime(&self) -> u64 {
        self.h.prime()
    }

    pub fn algebra(&self) -> Hmodp {
        self.h
    }

    /// X_k = [e^(p^k), f^(p^k)], cross-checked against
    /// Σ_{i=1}^{p^k} binom(h,i) f^(p^k−i) e^(p^k−i).
    pub fn x(&self, k: u32) -> Result<FpElement, Error> {
        if let Some(x) = self.xs.read().expect("cache poisoned").get(&k) {
            return Ok(x.clone());
        }
        let x = compute_x(k, self.prime())?;
        self.xs.write().expect("cache poisoned").insert(k, x.clone());
        Ok(x)
    }

    /// t_k = X_k − binom(h, p^k).
    pub fn t(&self, k: u32) -> Result<FpElement, Error> {
        Ok(self.x(k)?.sub(&self.h.h(pow_u64(self.prime(), k))))
    }

    /// Checks relation `id` of the presentation for the given k and n.
    /// Relations 1, 5 and 6 do not involve n.
    pub fn verify_relation(&self, id: u8, k: u32, n: u32) -> Result<RelationReport, Error> {
        let p = self.prime();
        let needs_n = matches!(id, 2..=4);
        if needs_n && n == 0 {
            return Err(Error::Precondition(format!("relation {id} needs n > 0")));
        }
        let mut report = RelationReport::new(Check::Relation(id), p, k, needs_n.then_some(n));
        let (ek, fk) = (self.h.e_gen(k), self.h.f_gen(k));
        match id {
            1 => {
                let x = self.x(k)?;
                report.expect_eq("[X_k, e] = 2e", &x.commutator(&ek), &ek.scale(2));
                report.expect_eq("[X_k, f] = -2f", &x.commutator(&fk), &fk.scale(p - 2));
            }
            2 => {
                let x = self.x(k)?;
                let zero = self.h.zero();
                report.expect_eq("[X_k, e_{k+n}] = 0", &x.commutator(&self.h.e_gen(k + n)), &zero);
                report.expect_eq("[X_k, f_{k+n}] = 0", &x.commutator(&self.h.f_gen(k + n)), &zero);
            }
            3 => {
                let zero = self.h.zero();
                report.expect_eq("[e_k, e_{k+n}] = 0", &ek.commutator(&self.h.e_gen(k + n)), &zero);
                report.expect_eq("[f_k, f_{k+n}] = 0", &fk.commutator(&self.h.f_gen(k + n)), &zero);
            }
            4 => {
                let x1 = self.x(k)?.add_scalar(1);
                let sign = if n % 2 == 0 { 1 } else { p - 1 };
                let mut f_run = self.h.one();
                let mut e_run = self.h.one();
                for j in k..k + n {
                    f_run = f_run.mul(&self.h.f_gen(j).pow(p - 1));
                    e_run = e_run.mul(&self.h.e_gen(j).pow(p - 1));
                }
                let lhs = ek.commutator(&self.h.f_gen(k + n));
                report.expect_eq("[e_k, f_{k+n}]", &lhs, &f_run.mul(&x1).scale(sign));
                let lhs = self.h.e_gen(k + n).commutator(&fk);
                report.expect_eq("[e_{k+n}, f_k]", &lhs, &x1.mul(&e_run).scale(sign));
            }
            5 => {
                let zero = self.h.zero();
                report.expect_eq("e_k^p = 0", &ek.pow(p), &zero);
                report.expect_eq("f_k^p = 0", &fk.pow(p), &zero);
            }
            6 => {
                let x = self.x(k)?;
                report.expect_eq("X_k^p = X_k", &x.pow(p), &x);
            }
            _ => return Err(Error::Precondition(format!("no relation {id}; ids are 1..=6"))),
        }
        Ok(report)
    }

    pub fn verify_t_idempotent(&self, k: u32) -> Result<RelationReport, Error> {
        let t = self.t(k)?;
        let mut report = RelationReport::new(Check::TIdempotent, self.prime(), k, None);
        report.expect_eq("t_k^2 = t_k", &t.mul(&t), &t);
        Ok(report)
    }

    /// The two summands A = t_{k−1}·binom(X_{k−1} − t_{k−1}, p−1) and
    /// B = Σ_j binom(X_{k−1}, j) f^(p^{k−1}(p−j)) e^(p^{k−1}(p−j)).
    pub fn t_summands(&self, k: u32) -> Result<(FpElement, FpElement), Error> {
        if k == 0 {
            return Err(Error::Precondition("the t_k recursion needs k >= 1".into()));
        }
        let p = self.prime();
        let (x, t) = (self.x(k - 1)?, self.t(k - 1)?);
        let a = t.mul(&binom_elem(&x.sub(&t), p - 1)?);
        let q = pow_u64(p, k - 1);
        let mut b = self.h.zero();
        for j in 1..p {
            let fe = self.h.f(q * (p - j)).mul(&self.h.e(q * (p - j)));
            b = b.add(&binom_elem(&x, j)?.mul(&fe));
        }
        Ok((a, b))
    }

    pub fn verify_t_recursion(&self, k: u32) -> Result<RelationReport, Error> {
        let (a, b) = self.t_summands(k)?;
        let mut report = RelationReport::new(Check::TRecursion, self.prime(), k, None);
        report.expect_eq("t_k = A + B", &self.t(k)?, &a.add(&b));
        Ok(report)
    }

    pub fn verify_orthogonality(&self, k: u32) -> Result<RelationReport, Error> {
        let (a, b) = self.t_summands(k)?;
        let zero = self.h.zero();
        let mut report = RelationReport::new(Check::Orthogonality, self.prime(), k, None);
        report.expect_eq("A^2 = A", &a.mul(&a), &a);
        report.expect_eq("B^2 = B", &b.mul(&b), &b);
        report.expect_eq("AB = 0", &a.mul(&b), &zero);
        report.expect_eq("BA = 0", &b.mul(&a), &zero);
        Ok(report)
    }

    /// X_0^{b_0}⋯X_n^{b_n}, memoized.
    fn x_power(&self, xexp: &[u64]) -> Result<Arc<FpElement>, Error> {
        if let Some(x) = self.x_powers.read().expect("cache poisoned").get(xexp) {
            return Ok(x.clone());
        }
        let mut out = self.h.one();
        for (i, b) in xexp.iter().enumerate() {
            if *b > 0 {
                out = out.mul(&self.x(i as u32)?.pow(*b));
            }
        }
        let out = Arc::new(out);
        self.x_powers.write().expect("cache poisoned").insert(xexp.to_vec(), out.clone());
        Ok(out)
    }

    /// (f)^{a_0}⋯(f^(p^n))^{a_n} X_0^{b_0}⋯X_n^{b_n} (e^(p^n))^{c_n}⋯(e)^{c_0}.
    pub fn xbasis_element(&self, xm: &XMonomial) -> Result<FpElement, Error> {
        let mut out = self.h.one();
        for (i, a) in xm.fexp().iter().enumerate() {
            if *a > 0 {
                out = out.mul(&self.h.f_gen(i as u32).pow(*a));
            }
        }
        out = out.mul(&*self.x_power(xm.xexp())?);
        for (i, c) in xm.eexp().iter().enumerate().rev() {
            if *c > 0 {
                out = out.mul(&self.h.e_gen(i as u32).pow(*c));
            }
        }
        Ok(out)
    }

    /// The coordinates of x ∈ H_n in the basis
    /// (f)^{a_0}⋯ Π binom(h, p^i)^{b_i} ⋯(e)^{c_0}, keyed by (weight, A, C)
    /// where weight = B = Σ b_i p^i, A = Σ a_i p^i and C = Σ c_i p^i.
    pub fn product_coordinates(
        &self,
        x: &FpElement,
        n: u32,
    ) -> Result<std::collections::BTreeMap<(u64, u64, u64), u64>, Error> {
        let p = self.prime();
        let mut out = std::collections::BTreeMap::new();
        for ((a, c), coeffs) in x.digit_coordinates(n)? {
            // (f^(p^i))^{a_i} = a_i!·f^(a_i p^i), and the levels merge without carries
            let scale = inv_mod(digit_factorials(a, p) * digit_factorials(c, p) % p, p);
            for (b, v) in coeffs.iter().enumerate() {
                if *v != 0 {
                    out.insert((b as u64, a, c), *v as u64 * scale % p);
                }
            }
        }
        Ok(out)
    }

    /// If the X-basis element `xm` of H_n is not "leading term plus lower
    /// weight" in the product basis, a description of the offending entry.
    pub fn unitriangular_violation(&self, xm: &XMonomial, n: u32) -> Result<Option<String>, Error> {
        let p = self.prime();
        let (a, b, c) = xm.indices(p);
        let coords = self.product_coordinates(&self.xbasis_element(xm)?, n)?;
        let diag = coords.get(&(b, a, c)).copied().unwrap_or(0);
        if diag != 1 {
            return Ok(Some(format!("{xm}: diagonal coefficient {diag}")));
        }
        Ok(coords
            .iter()
            .find(|((w, a2, c2), _)| *w >= b && (*w, *a2, *c2) != (b, a, c))
            .map(|((w, a2, c2), v)| format!("{xm}: coefficient {v} at weight {w}, f^({a2}), e^({c2})")))
    }

    /// Writes x ∈ H_n in the X-basis by descending induction on weight.
    pub fn to_xbasis(&self, x: &FpElement, n: u32) -> Result<XCombination, Error> {
        let p = self.prime();
        let mut rest = self.product_coordinates(x, n)?;
        let mut out = XCombination::new(p);
        while let Some((&(b, a, c), &coef)) = rest.iter().next_back() {
            let xm = XMonomial::from_indices(a, b, c, p);
            let image = self.product_coordinates(&self.xbasis_element(&xm)?, n)?;
            if image.get(&(b, a, c)) != Some(&1) || image.range((b, 0, 0)..).any(|(k, _)| *k != (b, a, c)) {
                return Err(Error::Inconsistent(format!("X-basis is not unitriangular at {xm}")));
            }
            for (key, v) in image {
                let slot = rest.entry(key).or_insert(0);
                *slot = (*slot + p * p - coef * v % p) % p;
                if *slot == 0 {
                    rest.remove(&key);
                }
            }
            out.add_term(xm, coef);
        }
        Ok(out)
    }

    /// Σ c·(basis element) for a combination of X-monomials.
    pub fn from_xbasis(&self, combo: &XCombination) -> Result<FpElement, Error> {
        let mut out = self.h.zero();
        for (xm, c) in combo.iter() {
            out = out.add(&self.xbasis_element(xm)?.scale(*c));
        }
        Ok(out)
    }

    /// θ(x) for x ∈ H_n: every generator level moves up by one.
    pub fn theta(&self, x: &FpElement, n: u32) -> Result<FpElement, Error> {
        let combo = self.to_xbasis(x, n)?;
        self.from_xbasis(&combo.shifted())
    }
}

/// Π a_i! over the base-p digits of a, mod p.
fn digit_factorials(a: u64, p: u64) -> u64 {
    crate::arith::digits(a, p).iter().map(|d| (1..=*d).product::<u64>() % p).fold(1, |x, y| x * y % p)
}

/// X_k for the prime p; see [`Splitting::x`].
pub fn compute_x(k: u32, p: u64) -> Result<FpElement, Error> {
    let h = Hmodp::new(p)?;
    let q = pow_u64(p, k);
    let commutator = h.e(q).commutator(&h.f(q));
    let mut sum = h.zero();
    for i in 1..=q {
        sum = sum.add(&h.h(i).mul(&h.f(q - i)).mul(&h.e(q - i)));
    }
    if commutator != sum {
        return Err(Error::Inconsistent(format!(
            "X_{k} for p={p}: commutator and sum formula differ by {}",
            commutator.sub(&sum)
        )));
    }
    Ok(commutator)
}

pub fn compute_t(k: u32, p: u64) -> Result<FpElement, Error> {
    Ok(compute_x(k, p)?.sub(&FpElement::h(p, pow_u64(p, k))))
}

/// binom(x, j) = x(x−1)⋯(x−j+1)/j! for j < p.
pub fn binom_elem(x: &FpElement, j: u64) -> Result<FpElement, Error> {
    let p = x.prime();
    if j >= p {
        return Err(Error::Precondition(format!("binom(x, {j}) needs {j} < p = {p}")));
    }
    let field = PrimeField::new(p)?;
    let mut out = FpElement::one(p);
    for i in 0..j {
        out = out.mul(&x.add_scalar(-(i as i64)));
    }
    let inv = field.checked_div(&1, &field.from_bigint(&factorial(j)))?;
    Ok(out.scale(inv))
}

#[cfg(test)]
mod tests;
