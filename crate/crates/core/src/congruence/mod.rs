//! The Casimir element, the δ-polynomial Q with Q̄ = 4X_1, and the mod-p³
//! congruences behind t_1² = t_1.

mod poly;

pub use poly::{is_p_local, reduce_rational, DeltaPoly, IntPoly};

use crate::arith::{binom_big, inv_mod, odd_prime, pow_mod, pow_u64, BigInt, Integers, PLocal, PLocalRational, Ring};
use crate::hmodp::{FpElement, Hmodp};
use crate::report::Verdict;
use crate::splitting::Splitting;
use crate::zform::{Element, Monomial};
use crate::Error;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;
use std::ops::RangeInclusive;

fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

/// δ = 4fe + (h+1)², checked against 4ef + (h−1)² and for commuting with e, f.
pub fn casimir<R: Ring>(ring: R) -> Result<Element<R>, Error> {
    let (e, f, h) = (Element::e(ring, 1), Element::f(ring, 1), Element::h(ring, 1));
    let four = ring.from_i64(4);
    let hp = h.add(&Element::one(ring));
    let hm = h.sub(&Element::one(ring));
    let delta = f.mul(&e).scale(&four).add(&hp.mul(&hp));
    let other = e.mul(&f).scale(&four).add(&hm.mul(&hm));
    if delta != other {
        return Err(Error::Inconsistent(format!("4fe+(h+1)^2 - 4ef-(h-1)^2 = {}", delta.sub(&other))));
    }
    for (name, g) in [("e", &e), ("f", &f)] {
        let c = delta.commutator(g);
        if !c.is_zero() {
            return Err(Error::Inconsistent(format!("[delta, {name}] = {c}")));
        }
    }
    Ok(delta)
}

/// The image of δ in H.
pub fn casimir_fp(p: u64) -> Result<FpElement, Error> {
    Hmodp::new(p)?.reduce(&casimir(Integers)?)
}

/// (h − 2l + 1)² for l = 1..p, and (h + 2l − 1)² for l = 1..p.
fn square_roots(p: u64) -> (Vec<IntPoly>, Vec<IntPoly>) {
    let p = p as i64;
    let sq = |x: IntPoly| x.mul(&x);
    let first = (1..=p).map(|l| sq(IntPoly::linear(1, 1 - 2 * l))).collect();
    let second = (1..=p).map(|l| sq(IntPoly::linear(1, 2 * l - 1))).collect();
    (first, second)
}

/// Π_l (δ − s_l(h)) as an element of H'' = Dist over ℤ_(p).
fn delta_product(ring: PLocal, delta: &Element<PLocal>, roots: &[IntPoly]) -> Result<Element<PLocal>, Error> {
    let mut out = Element::one(ring);
    for r in roots {
        out = out.mul(&delta.sub(&torus_element(ring, r)?));
    }
    Ok(out)
}

/// A polynomial in h as an element Σ c_k binom(h, k); needs p-local c_k.
fn torus_element(ring: PLocal, poly: &IntPoly) -> Result<Element<PLocal>, Error> {
    let p = ring.prime();
    let mut out = Element::zero(ring);
    for (k, c) in poly.binomial_coefficients().iter().enumerate() {
        let c = PLocalRational::from_ratio(c.numer().clone(), c.denom().clone(), p)?;
        out.add_term(Monomial::new(0, k as u64, 0), c);
    }
    Ok(out)
}

/// 4^p (p−1)!² e^(p)f^(p) = Π_l (δ − (h−2l+1)²)/p² and the twin with
/// f^(p)e^(p), as identities in H''.
pub fn product_formula_check(p: u64) -> Result<Verdict, Error> {
    let ring = PLocal::new(odd_prime(p)?)?;
    let delta = casimir(ring)?;
    let (first, second) = square_roots(p);
    let p2 = ring.from_i64((p * p) as i64);
    let divide = |x: Element<PLocal>| x.try_map_coeffs(ring, |c| ring.checked_div(c, &p2));
    let lhs_scale = {
        let fact: BigInt = (1..p).map(BigInt::from).product();
        ring.from_bigint(&(big(4).pow(p as u32) * &fact * &fact))
    };
    let ef = Element::e(ring, p).mul(&Element::f(ring, p)).scale(&lhs_scale);
    let fe = Element::f(ring, p).mul(&Element::e(ring, p)).scale(&lhs_scale);
    let prod1 = delta_product(ring, &delta, &first)?;
    let prod2 = delta_product(ring, &delta, &second)?;
    let q = divide(prod1.sub(&prod2))?;
    let (r1, r2) = (divide(prod1)?, divide(prod2)?);
    Ok(Verdict::all([
        Verdict::check(r1 == ef, || format!("e^(p)f^(p) side differs by {}", r1.sub(&ef))),
        Verdict::check(r2 == fe, || format!("f^(p)e^(p) side differs by {}", r2.sub(&fe))),
        Verdict::check(q == ef.sub(&fe), || "difference of the products is not their quotient".into()),
    ]))
}

/// Q = (Π_l (δ − (h−2l+1)²) − Π_l (δ − (h+2l−1)²)) / p².
pub fn q_poly(p: u64) -> Result<DeltaPoly, Error> {
    let p = odd_prime(p)?;
    let (first, second) = square_roots(p);
    let diff = DeltaPoly::product_of_roots(&first).sub(&DeltaPoly::product_of_roots(&second));
    Ok(diff.scale(&BigRational::new(BigInt::one(), big((p * p) as i64))))
}

/// Each Q_i(h) is p-local for every integer h in `hs`.
pub fn q_integrality_pointwise(p: u64, hs: RangeInclusive<i64>) -> Result<Verdict, Error> {
    let q = q_poly(p)?;
    for (i, qi) in q.coeffs().iter().enumerate() {
        for h in hs.clone() {
            let v = qi.eval(&big(h));
            if !is_p_local(&v, p) {
                return Ok(Verdict::fail(format!("Q_{i}({h}) = {v}")));
            }
        }
    }
    Ok(Verdict::pass())
}

/// Each Q_i has p-local coordinates in the basis binom(h, k), so maps every
/// integer into ℤ_(p).
pub fn q_integrality_symbolic(p: u64) -> Result<Verdict, Error> {
    let q = q_poly(p)?;
    for (i, qi) in q.coeffs().iter().enumerate() {
        for (k, c) in qi.binomial_coefficients().iter().enumerate() {
            if !is_p_local(c, p) {
                return Ok(Verdict::fail(format!("Q_{i} has coefficient {c} on binom(h,{k})")));
            }
        }
    }
    Ok(Verdict::pass())
}

/// Σ_i Q_i(h)·δ^i in H''.
pub fn q_element(p: u64) -> Result<Element<PLocal>, Error> {
    let ring = PLocal::new(odd_prime(p)?)?;
    let delta = casimir(ring)?;
    let mut out = Element::zero(ring);
    let mut power = Element::one(ring);
    for qi in q_poly(p)?.coeffs() {
        out = out.add(&torus_element(ring, qi)?.mul(&power));
        power = power.mul(&delta);
    }
    Ok(out)
}

/// Q̄ = 4X_1, and 4t_1 = Q̄ − 4binom(h, p).
pub fn q_image_check(p: u64) -> Result<Verdict, Error> {
    let h = Hmodp::new(p)?;
    let q_bar = h.reduce(&q_element(p)?)?;
    let sp = Splitting::new(p)?;
    let x1 = sp.x(1)?;
    let t1 = sp.t(1)?;
    Ok(Verdict::all([
        Verdict::check(q_bar == x1.scale(4), || format!("Q - 4X_1 = {}", q_bar.sub(&x1.scale(4)))),
        Verdict::check(t1.scale(4) == q_bar.sub(&h.h(p).scale(4)), || "4t_1 != Q - 4 binom(h,p)".into()),
    ]))
}

/// Coefficients (constant first) of Π_{j ∈ F_p} (x − j²) over F_p.
pub fn delta_minpoly_coeffs(p: u64) -> Vec<u64> {
    let mut coeffs = vec![1u64];
    for j in 0..p {
        let root = j * j % p;
        let mut next = vec![0u64; coeffs.len() + 1];
        for (i, c) in coeffs.iter().enumerate() {
            next[i + 1] = (next[i + 1] + c) % p;
            next[i] = (next[i] + (p - root) * c) % p;
        }
        coeffs = next;
    }
    coeffs
}

/// Π_{j∈F_p} (δ − j²) = 0 in H, it expands to δ^p − 2δ^{(p+1)/2} + δ, and
/// leaving out any one factor gives a nonzero element.
pub fn delta_minpoly_check(p: u64) -> Result<Verdict, Error> {
    let p = odd_prime(p)?;
    let delta = casimir_fp(p)?;
    let factors: Vec<FpElement> = (0..p).map(|j| delta.add_scalar(-((j * j % p) as i64))).collect();
    let product = |skip: Option<usize>| {
        factors
            .iter()
            .enumerate()
            .filter(|(i, _)| Some(*i) != skip)
            .fold(FpElement::one(p), |acc, (_, x)| acc.mul(x))
    };
    let mut expect = vec![0u64; p as usize + 1];
    expect[p as usize] = 1;
    expect[(p as usize + 1) / 2] = p - 2;
    expect[1] = 1;
    let mut checks = vec![
        Verdict::check(product(None).is_zero(), || "prod (delta - j^2) is not zero".into()),
        Verdict::check(delta_minpoly_coeffs(p) == expect, || format!("{:?}", delta_minpoly_coeffs(p))),
    ];
    for j in 0..p as usize {
        checks.push(Verdict::check(!product(Some(j)).is_zero(), || format!("product without j={j} vanishes")));
    }
    Ok(Verdict::all(checks))
}

fn require_unit(jt: i64, p: u64) -> Result<(), Error> {
    if jt.rem_euclid(p as i64) == 0 {
        return Err(Error::Precondition(format!("p = {p} divides j = {jt}")));
    }
    Ok(())
}

/// χ(h) = Σ_{i=1}^p Π_{l≠i} (j+h−2l+1)(j−h+2l−1).
pub fn chi(h: i64, jt: i64, p: u64) -> Result<BigInt, Error> {
    require_unit(jt, p)?;
    let p = p as i64;
    let factor = |l: i64| big(jt + h - 2 * l + 1) * big(jt - h + 2 * l - 1);
    Ok((1..=p).map(|i| (1..=p).filter(|l| *l != i).map(factor).product::<BigInt>()).sum())
}

/// The coefficient of (δ − j²) in Π_l (δ − r_l²), by expanding in δ and
/// re-centring.
fn linear_coefficient(roots: impl Iterator<Item = i64>, jt: i64) -> BigInt {
    let polys: Vec<IntPoly> = roots.map(|r| IntPoly::constant(r * r)).collect();
    let c = DeltaPoly::product_of_roots(&polys).taylor_coeff(1, &big(jt * jt)).eval(&BigInt::zero());
    debug_assert!(c.is_integer());
    c.to_integer()
}

/// χ(h) computed from the expanded first product.
pub fn chi_by_expansion(h: i64, jt: i64, p: u64) -> Result<BigInt, Error> {
    require_unit(jt, p)?;
    Ok(linear_coefficient((1..=p as i64).map(|l| h - 2 * l + 1), jt))
}

/// The same coefficient for Π_l (δ − (h+2l−1)²); equals χ(h + 2p).
pub fn chi_second(h: i64, jt: i64, p: u64) -> Result<BigInt, Error> {
    require_unit(jt, p)?;
    Ok(linear_coefficient((1..=p as i64).map(|l| h + 2 * l - 1), jt))
}

/// p²R_1 where Q = Σ R_m (δ − j²)^m.
pub fn r1_poly(p: u64, jt: i64) -> Result<IntPoly, Error> {
    let q = q_poly(p)?;
    Ok(q.taylor_coeff(1, &big(jt * jt)).scale(&BigRational::from_integer(big((p * p) as i64))))
}

/// χ(h) − χ(h+2p) ≡ 0 mod p³ for all h in `hs`.
pub fn r1_congruence_check(p: u64, jt: i64, hs: RangeInclusive<i64>) -> Result<Verdict, Error> {
    require_unit(jt, p)?;
    let p3 = big(pow_u64(p, 3) as i64);
    for h in hs {
        let d = chi(h, jt, p)? - chi(h + 2 * p as i64, jt, p)?;
        if !(&d % &p3).is_zero() {
            return Ok(Verdict::fail(format!("j={jt} h={h}: chi(h)-chi(h+2p) = {d}")));
        }
    }
    Ok(Verdict::pass())
}

/// τ(i) ∈ [1, p] with j − i + τ(i) ≡ 0 mod p.
pub fn tau(i: i64, jt: i64, p: u64) -> i64 {
    let p = p as i64;
    let t = (i - jt).rem_euclid(p);
    if t == 0 {
        p
    } else {
        t
    }
}

/// The l_0 ∈ [1, p] with j + h − 2l_0 + 1 ≡ 0 mod p.
pub fn l0(jt: i64, h: i64, p: u64) -> i64 {
    let p_i = p as i64;
    (1..=p_i).find(|l| (jt + h - 2 * l + 1).rem_euclid(p_i) == 0).expect("2 is invertible mod p")
}

/// φ(x) = Π_{l≠l_0} (j + x − 2l + 1)(j − x + 2τ(l) − 1), expanded.
pub fn phi_poly(jt: i64, h: i64, p: u64) -> IntPoly {
    let l_0 = l0(jt, h, p);
    (1..=p as i64).filter(|l| *l != l_0).fold(IntPoly::constant(1), |acc, l| {
        acc.mul(&IntPoly::linear(1, jt - 2 * l + 1)).mul(&IntPoly::linear(-1, jt + 2 * tau(l, jt, p) - 1))
    })
}

/// The steps of the φ′ argument at one (j, h): τ is a bijection; the
/// τ-rewritten sum equals j·χ(h); the summands i ≠ l_0 vanish mod p³; both
/// factor families run over the nonzero residues; p² | φ(h) − φ(h+2p);
/// p | φ′(h).
pub fn phi_prime_check(p: u64, jt: i64, h: i64) -> Result<Verdict, Error> {
    require_unit(jt, p)?;
    let p_i = p as i64;
    let mut checks = Vec::new();

    let mut taus: Vec<i64> = (1..=p_i).map(|i| tau(i, jt, p)).collect();
    taus.sort();
    checks.push(Verdict::check(taus == (1..=p_i).collect::<Vec<_>>(), || format!("tau is not a bijection: {taus:?}")));

    let a = |l: i64| big(jt + h - 2 * l + 1);
    let b = |l: i64| big(jt - h + 2 * tau(l, jt, p) - 1);
    let summand = |i: i64| {
        big(jt - i + tau(i, jt, p)) * (1..=p_i).filter(|l| *l != i).map(|l| a(l) * b(l)).product::<BigInt>()
    };
    let total: BigInt = (1..=p_i).map(summand).sum();
    let lhs = big(jt) * chi(h, jt, p)?;
    checks.push(Verdict::check(total == lhs, || format!("tau identity: {total} != {lhs}")));

    let l_0 = l0(jt, h, p);
    let p3 = big(pow_u64(p, 3) as i64);
    for i in (1..=p_i).filter(|i| *i != l_0) {
        let s = summand(i);
        checks.push(Verdict::check((&s % &p3).is_zero(), || format!("summand i={i} = {s} not divisible by p^3")));
    }

    let residues = |f: &dyn Fn(i64) -> BigInt| {
        let mut rs: Vec<i64> =
            (1..=p_i).filter(|l| *l != l_0).map(|l| f(l).mod_floor(&big(p_i)).try_into().unwrap()).collect();
        rs.sort();
        rs
    };
    let nonzero: Vec<i64> = (1..p_i).collect();
    checks.push(Verdict::check(residues(&a) == nonzero, || "j+h-2l+1 misses a residue".into()));
    checks.push(Verdict::check(residues(&b) == nonzero, || "j-h+2tau(l)-1 misses a residue".into()));

    let phi = phi_poly(jt, h, p);
    let diff = phi.eval(&big(h)) - phi.eval(&big(h + 2 * p_i));
    let p2 = BigRational::from_integer(big(p_i * p_i));
    checks.push(Verdict::check((&diff / &p2).is_integer(), || format!("phi(h)-phi(h+2p) = {diff}")));
    let d = phi.derivative().eval(&big(h));
    checks.push(Verdict::check((&d / BigRational::from_integer(big(p_i))).is_integer(), || {
        format!("phi'({h}) = {d}")
    }));
    Ok(Verdict::all(checks))
}

/// Σ_{i=1}^{p−1} ((p−1)!/i)(p−1)! − Σ (p−1)!((p−1)!/i) ≡ 0 mod p, with
/// Σ 1/i ≡ 0 mod p behind it.
pub fn closing_identity_check(p: u64) -> Verdict {
    let fact = (1..p).fold(1, |acc, i| acc * i % p);
    let inv_sum = (1..p).map(|i| inv_mod(i, p)).sum::<u64>() % p;
    let first = (1..p).map(|i| fact * inv_mod(i, p) % p * fact % p).sum::<u64>() % p;
    let second = (1..p).map(|i| fact * (fact * inv_mod(i, p) % p) % p).sum::<u64>() % p;
    Verdict::all([
        Verdict::check((first + p - second) % p == 0, || format!("{first} != {second}")),
        Verdict::check(inv_sum == 0, || format!("sum 1/i = {inv_sum}")),
        Verdict::check(first == 0, || format!("first sum = {first}")),
    ])
}

/// The value of 4t_1 at (h, δ) = (i, j²), and the r, s of the argument.
#[derive(Clone, Debug, Serialize)]
pub struct Eigenvalue {
    pub p: u64,
    pub i: u64,
    pub jt: i64,
    pub value: u64,
    pub a: i64,
    pub b: i64,
    pub r: i64,
    pub s: i64,
}

impl Eigenvalue {
    /// value ∈ {0, 4}, value ≡ −2(r−s)+4, r − s ∈ {0, 2} and
    /// −2p+4 ≤ (r−s)p ≤ 4p−2.
    pub fn verdict(&self) -> Verdict {
        let p = self.p as i64;
        let rs = self.r - self.s;
        Verdict::all([
            Verdict::check(self.value == 0 || self.value == 4 % self.p, || format!("{self:?}: value not in {{0,4}}")),
            Verdict::check((-2 * rs + 4).rem_euclid(p) as u64 == self.value, || format!("{self:?}: != -2(r-s)+4")),
            Verdict::check(rs == 0 || rs == 2, || format!("{self:?}: r-s = {rs}")),
            Verdict::check((-2 * p + 4..=4 * p - 2).contains(&(rs * p)), || format!("{self:?}: bound")),
        ])
    }
}

/// The difference of the two numeric products at (ĩ, j̃), over p², mod p.
pub fn eigenvalue_check(p: u64, i: u64, jt: i64) -> Result<Eigenvalue, Error> {
    let p = odd_prime(p)?;
    if i >= p {
        return Err(Error::Precondition(format!("i = {i} must be below p = {p}")));
    }
    let (p_i, it) = (p as i64, i as i64);
    let j2 = big(jt * jt);
    let prod = |f: &dyn Fn(i64) -> i64| (1..=p_i).map(|l| &j2 - big(f(l)).pow(2)).product::<BigInt>();
    let diff = prod(&|l| it - 2 * l + 1) - prod(&|l| it + 2 * l - 1);
    let p2 = big(p_i * p_i);
    if !(&diff % &p2).is_zero() {
        return Err(Error::Inconsistent(format!("p^2 does not divide the product difference {diff}")));
    }
    let value: u64 = (diff / p2).mod_floor(&big(p_i)).try_into().expect("reduced mod p");
    let find = |f: &dyn Fn(i64) -> i64| (1..=p_i).find(|x| f(*x).rem_euclid(p_i) == 0).expect("2 is invertible");
    let a = find(&|a| jt - it + 2 * a - 1);
    let b = find(&|b| jt + it - 2 * b + 1);
    let r = (jt - it + 2 * a - 1) / p_i;
    let s = (jt + it - 2 * b + 1) / p_i;
    Ok(Eigenvalue { p, i, jt, value, a, b, r, s })
}

/// For every (i, j): the image of 4t_1 = Σ Q̄_m(h) δ^m − 4binom(h, p) under
/// h ↦ i, δ ↦ j² + ε has ε-coefficient 0 when j ≠ 0 and constant term equal
/// to the eigenvalue computation, which lies in {0, 4}.
pub fn factor_algebra_check(p: u64) -> Result<Verdict, Error> {
    let p = odd_prime(p)?;
    let q = q_poly(p)?;
    let mut checks = Vec::new();
    for i in 0..p {
        let qs: Vec<u64> = q
            .coeffs()
            .iter()
            .map(|qm| reduce_rational(&qm.eval(&big(i as i64)), p))
            .collect::<Option<_>>()
            .ok_or_else(|| Error::Inconsistent(format!("Q_m({i}) is not {p}-local")))?;
        // binom(i, p) = 0 for 0 ≤ i < p
        for j in 0..p {
            let j2 = j * j % p;
            let mut constant = 0;
            let mut eps = 0;
            for (m, qm) in qs.iter().enumerate() {
                constant = (constant + qm * pow_mod(j2, m as u64, p)) % p;
                if m > 0 {
                    eps = (eps + m as u64 % p * qm % p * pow_mod(j2, m as u64 - 1, p)) % p;
                }
            }
            let ev = eigenvalue_check(p, i, j as i64)?;
            checks.push(Verdict::check(constant == ev.value, || {
                format!("i={i} j={j}: constant {constant} != eigenvalue {}", ev.value)
            }));
            checks.push(ev.verdict());
            if j2 != 0 {
                checks.push(Verdict::check(eps == 0, || format!("i={i} j={j}: eps-coefficient {eps}")));
            }
        }
    }
    Ok(Verdict::all(checks))
}

/// Nonzero squares mod p, each with its square roots in [1, p).
pub fn quadratic_residues(p: u64) -> Vec<(u64, Vec<u64>)> {
    let mut out: Vec<(u64, Vec<u64>)> = Vec::new();
    for j in 1..p {
        let r = j * j % p;
        match out.iter_mut().find(|(x, _)| *x == r) {
            Some((_, roots)) => roots.push(j),
            None => out.push((r, vec![j])),
        }
    }
    out.sort();
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct Wolstenholme {
    pub n: u64,
    pub p: u64,
    /// binom(np, p) mod p³
    pub residue: BigInt,
    pub passed: bool,
}

/// binom(np, p) ≡ n mod p³. Holds for p ≥ 5; p = 3 is accepted and may fail.
pub fn wolstenholme_check(n: u64, p: u64) -> Result<Wolstenholme, Error> {
    let p = odd_prime(p)?;
    let p3 = big(pow_u64(p, 3) as i64);
    let residue = binom_big(&big((n * p) as i64), p).mod_floor(&p3);
    let passed = residue == big(n as i64).mod_floor(&p3);
    Ok(Wolstenholme { n, p, residue, passed })
}
