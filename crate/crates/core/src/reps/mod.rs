//! Weyl modules V(m) mod p, their weight pieces V_r, the action through θ,
//! and recovery of a module from its Frobenius twist.

mod matrix;

pub use matrix::FpMatrix;

use crate::arith::{binom_mod_p_signed, lucas, odd_prime, pow_u64};
use crate::congruence::casimir_fp;
use crate::hmodp::FpElement;
use crate::report::Verdict;
use crate::splitting::Splitting;
use crate::Error;
use serde::Serialize;

/// V(m) over F_p with basis v_0..v_m of weights m, m−2, …, −m, possibly
/// Frobenius-twisted `twist` times (weights multiplied by p^twist).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeylModule {
    m: u64,
    p: u64,
    twist: u32,
}

/// The basis vectors of V whose weight is ≡ r mod p.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Subspace {
    pub m: u64,
    pub p: u64,
    pub r: u64,
    pub indices: Vec<usize>,
}

impl Subspace {
    pub fn dim(&self) -> usize {
        self.indices.len()
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        v.iter().enumerate().all(|(i, x)| *x == 0 || self.indices.contains(&i))
    }
}

/// V(m) mod p, after checking its action tables against the straightening
/// formula for e^(r)f^(s) (r, s ≤ p) and the six relations for k ≤ 1.
pub fn weyl_module(m: u64, p: u64) -> Result<WeylModule, Error> {
    let v = WeylModule { m, p: odd_prime(p)?, twist: 0 };
    let checks = Verdict::all([v.verify_straightening(p), v.verify_relations(1, 2)]);
    match checks.witness {
        None => Ok(v),
        Some(w) => Err(Error::Inconsistent(format!("V({m}) mod {p}: {w}"))),
    }
}

impl WeylModule {
    /// The one-dimensional trivial module V(0).
    pub fn trivial(p: u64) -> Result<Self, Error> {
        weyl_module(0, p)
    }

    pub fn highest_weight(&self) -> u64 {
        self.m
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn twist(&self) -> u32 {
        self.twist
    }

    pub fn dim(&self) -> usize {
        self.m as usize + 1
    }

    /// The same space with x acting as Fr(x) acts here.
    pub fn frobenius_twist(&self) -> Self {
        WeylModule { twist: self.twist + 1, ..self.clone() }
    }

    fn untwisted(&self) -> Self {
        WeylModule { twist: 0, ..self.clone() }
    }

    /// Integer weight of v_i.
    pub fn weight(&self, i: usize) -> i64 {
        pow_u64(self.p, self.twist) as i64 * (self.m as i64 - 2 * i as i64)
    }

    /// e^(c)·v_i = binom(m−i+c, c)·v_{i−c} on the untwisted module.
    pub fn e_matrix(&self, c: u64) -> FpMatrix {
        let mut out = FpMatrix::zero(self.p, self.dim());
        for i in c..=self.m {
            out.add_at((i - c) as usize, i as usize, lucas(self.m - i + c, c, self.p));
        }
        out
    }

    /// f^(a)·v_i = binom(i+a, a)·v_{i+a} on the untwisted module.
    pub fn f_matrix(&self, a: u64) -> FpMatrix {
        let mut out = FpMatrix::zero(self.p, self.dim());
        for i in 0..=self.m.saturating_sub(a) {
            if i + a <= self.m {
                out.add_at((i + a) as usize, i as usize, lucas(i + a, a, self.p));
            }
        }
        out
    }

    /// binom(h + shift, b) on the untwisted module.
    pub fn binom_matrix(&self, b: u64, shift: i64) -> FpMatrix {
        let base = self.untwisted();
        FpMatrix::diagonal(self.p, (0..self.dim()).map(|i| binom_mod_p_signed(base.weight(i) + shift, b, self.p)))
    }

    /// The operator of x ∈ H.
    pub fn act(&self, x: &FpElement) -> FpMatrix {
        if self.twist > 0 {
            let inner = WeylModule { twist: self.twist - 1, ..self.clone() };
            return inner.act(&x.frobenius());
        }
        let (p, m) = (self.p, self.m);
        let mut out = FpMatrix::zero(p, self.dim());
        for (a, c) in x.blocks() {
            for i in c..=m {
                let j = i - c;
                if j + a > m {
                    continue;
                }
                let coef = lucas(m - i + c, c, p)
                    * x.torus_value(a, c, self.weight(j as usize)) % p
                    * lucas(j + a, a, p)
                    % p;
                out.add_at((j + a) as usize, i as usize, coef);
            }
        }
        out
    }

    /// Operators of e^(p^k), f^(p^k) through `act`.
    fn generators(&self, k: u32) -> (FpMatrix, FpMatrix) {
        let q = pow_u64(self.p, k);
        (self.act(&FpElement::e(self.p, q)), self.act(&FpElement::f(self.p, q)))
    }

    pub fn project_r(&self, r: u64) -> Subspace {
        let p = self.p as i64;
        let indices = (0..self.dim()).filter(|i| self.weight(*i).rem_euclid(p) == (r % self.p) as i64).collect();
        Subspace { m: self.m, p: self.p, r: r % self.p, indices }
    }

    /// θ(x) applied to v ∈ V_r.
    pub fn theta_action(&self, sp: &Splitting, x: &FpElement, r: u64, v: &[u64]) -> Result<Vec<u64>, Error> {
        let sub = self.project_r(r);
        if v.len() != self.dim() || !sub.contains(v) {
            return Err(Error::Precondition(format!("vector is not in V_{r}")));
        }
        Ok(self.act(&theta(sp, x)?).apply(v))
    }

    /// θ(x) as an operator on V_r, in the basis of `project_r`.
    pub fn theta_operator(&self, sp: &Splitting, x: &FpElement, r: u64) -> Result<FpMatrix, Error> {
        let sub = self.project_r(r);
        let full = self.act(&theta(sp, x)?);
        for i in 0..self.dim() {
            for j in &sub.indices {
                if full.get(i, *j) != 0 && !sub.indices.contains(&i) {
                    return Err(Error::Inconsistent(format!("theta moves v_{j} out of V_{r}")));
                }
            }
        }
        Ok(full.restrict(&sub.indices))
    }

    /// e^(r)f^(s) = Σ_j f^(s−j)·binom(h − r − s + 2j, j)·e^(r−j) for r, s ≤ smax.
    pub fn verify_straightening(&self, smax: u64) -> Verdict {
        let u = self.untwisted();
        for r in 0..=smax {
            for s in 0..=smax {
                let lhs = u.e_matrix(r).mul(&u.f_matrix(s));
                let mut rhs = FpMatrix::zero(self.p, self.dim());
                for j in 0..=r.min(s) {
                    let mid = u.binom_matrix(j, 2 * j as i64 - (r + s) as i64);
                    rhs = rhs.add(&u.f_matrix(s - j).mul(&mid).mul(&u.e_matrix(r - j)));
                }
                if lhs != rhs {
                    return Verdict::fail(format!("e^({r})f^({s}) on V({})", self.m));
                }
            }
        }
        Verdict::pass()
    }

    /// The six relations for the action operators, k ≤ kmax, 1 ≤ n ≤ nmax.
    pub fn verify_relations(&self, kmax: u32, nmax: u32) -> Verdict {
        relations_hold(self.p, kmax, nmax, |k| Ok(self.generators(k))).unwrap_or_else(|e| Verdict::fail(e.to_string()))
    }

    /// The same relations for θ(e^(p^k)), θ(f^(p^k)) acting on V_r.
    pub fn verify_theta_relations(&self, sp: &Splitting, r: u64, kmax: u32, nmax: u32) -> Result<Verdict, Error> {
        relations_hold(self.p, kmax, nmax, |k| {
            let q = pow_u64(self.p, k);
            Ok((
                self.theta_operator(sp, &FpElement::e(self.p, q), r)?,
                self.theta_operator(sp, &FpElement::f(self.p, q), r)?,
            ))
        })
    }

    /// δ acts as (m+1)².
    pub fn verify_casimir(&self) -> Result<Verdict, Error> {
        let d = self.act(&casimir_fp(self.p)?);
        let s = (self.m + 1) * (self.m + 1);
        Ok(Verdict::check(d == FpMatrix::identity(self.p, self.dim()).scale(s), || {
            format!("delta on V({}) is {d:?}", self.m)
        }))
    }

    /// t_k acts as an idempotent.
    pub fn verify_t_idempotent(&self, sp: &Splitting, k: u32) -> Result<Verdict, Error> {
        let t = self.act(&sp.t(k)?);
        Ok(Verdict::check(t.mul(&t) == t, || format!("t_{k} on V({}) is {t:?}", self.m)))
    }
}

fn theta(sp: &Splitting, x: &FpElement) -> Result<FpElement, Error> {
    sp.theta(x, x.min_level())
}

/// Relations 1–6 for operators e_k, f_k given by `gens`.
fn relations_hold(
    p: u64,
    kmax: u32,
    nmax: u32,
    gens: impl Fn(u32) -> Result<(FpMatrix, FpMatrix), Error>,
) -> Result<Verdict, Error> {
    let mut checks = Vec::new();
    for k in 0..=kmax {
        let (ek, fk) = gens(k)?;
        let x = ek.commutator(&fk);
        let dim = x.dim();
        let zero = FpMatrix::zero(p, dim);
        let mut eq = |name: String, a: FpMatrix, b: &FpMatrix| checks.push(Verdict::check(&a == b, || name));
        eq(format!("[X_{k}, e] = 2e"), x.commutator(&ek), &ek.scale(2));
        eq(format!("[X_{k}, f] = -2f"), x.commutator(&fk), &fk.scale(p - 2));
        eq(format!("e_{k}^p = 0"), ek.pow(p), &zero);
        eq(format!("f_{k}^p = 0"), fk.pow(p), &zero);
        eq(format!("X_{k}^p = X_{k}"), x.pow(p), &x);
        for n in 1..=nmax {
            let (en, fn_) = gens(k + n)?;
            eq(format!("[X_{k}, e_{}] = 0", k + n), x.commutator(&en), &zero);
            eq(format!("[X_{k}, f_{}] = 0", k + n), x.commutator(&fn_), &zero);
            eq(format!("[e_{k}, e_{}] = 0", k + n), ek.commutator(&en), &zero);
            eq(format!("[f_{k}, f_{}] = 0", k + n), fk.commutator(&fn_), &zero);
            let sign = if n % 2 == 0 { 1 } else { p - 1 };
            let x1 = x.add_scalar(1);
            let mut f_run = FpMatrix::identity(p, dim);
            let mut e_run = FpMatrix::identity(p, dim);
            for j in k..k + n {
                let (ej, fj) = gens(j)?;
                f_run = f_run.mul(&fj.pow(p - 1));
                e_run = e_run.mul(&ej.pow(p - 1));
            }
            eq(format!("[e_{k}, f_{}]", k + n), ek.commutator(&fn_), &f_run.mul(&x1).scale(sign));
            eq(format!("[e_{}, f_{k}]", k + n), en.commutator(&fk), &x1.mul(&e_run).scale(sign));
        }
    }
    Ok(Verdict::all(checks))
}

/// Twists W by Fr, checks every weight is ≡ 0 mod p so V_0 is everything,
/// then checks θ acting on V_0 gives back W's operators for e^(p^k), f^(p^k)
/// and binom(h, p^k) with p^k ≤ max(m, 1).
pub fn frobenius_twist_recovery(sp: &Splitting, w: &WeylModule) -> Result<Verdict, Error> {
    let p = w.prime();
    let v = w.frobenius_twist();
    let v0 = v.project_r(0);
    let mut checks = vec![Verdict::check(v0.dim() == v.dim(), || format!("V_0 has dimension {}", v0.dim()))];
    let mut k = 0;
    while k == 0 || pow_u64(p, k) <= w.highest_weight() {
        let q = pow_u64(p, k);
        for (name, g) in [("e", FpElement::e(p, q)), ("f", FpElement::f(p, q)), ("binom(h)", FpElement::h(p, q))] {
            let lifted = v.theta_operator(sp, &g, 0)?;
            let original = w.act(&g);
            checks.push(Verdict::check(lifted == original, || {
                format!("{name} at level {k} on V({}): {lifted:?} != {original:?}", w.highest_weight())
            }));
        }
        k += 1;
    }
    Ok(Verdict::all(checks))
}
