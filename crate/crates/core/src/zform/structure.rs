//! Structure constants of the Kostant form: straightening of
//! e^(r) f^(s), commuting binom(h, k) past divided powers, and products in the
//! binom(h, b) basis of the torus part.

use super::{Element, HPoly, Monomial};
use crate::arith::{binom_big, binom_int, BigInt, Ring};
use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

type Table = Arc<Vec<(u64, BigInt)>>;

/// Memo of integer structure constants shared by every coefficient ring.
///
/// The cache is an optimization only; [`StructureCache::disabled`] recomputes
/// everything and is used for differential testing.
#[derive(Debug)]
pub struct StructureCache {
    enabled: bool,
    hh: RwLock<HashMap<(u64, u64), Table>>,
    shift: RwLock<HashMap<(i64, u64), Table>>,
}

impl StructureCache {
    pub fn new() -> Self {
        StructureCache { enabled: true, hh: Default::default(), shift: Default::default() }
    }

    pub fn disabled() -> Self {
        StructureCache { enabled: false, ..Self::new() }
    }

    pub fn global() -> &'static StructureCache {
        static GLOBAL: OnceLock<StructureCache> = OnceLock::new();
        GLOBAL.get_or_init(StructureCache::new)
    }

    pub fn is_enabled(&self) -> bool {
        self.enabled
    }

    fn memo<K: std::hash::Hash + Eq + Copy>(
        &self,
        map: &RwLock<HashMap<K, Table>>,
        key: K,
        compute: impl FnOnce() -> Vec<(u64, BigInt)>,
    ) -> Table {
        if !self.enabled {
            return Arc::new(compute());
        }
        if let Some(t) = map.read().expect("cache poisoned").get(&key) {
            return t.clone();
        }
        let t = Arc::new(compute());
        map.write().expect("cache poisoned").entry(key).or_insert(t).clone()
    }

    /// Coefficients of binom(h, a)·binom(h, b) in the binom(h, k) basis.
    pub(crate) fn hh_table(&self, a: u64, b: u64) -> Table {
        let key = if a <= b { (a, b) } else { (b, a) };
        self.memo(&self.hh, key, || hh_coefficients(key.0, key.1))
    }

    /// Coefficients of binom(h + a, k) in the binom(h, j) basis.
    pub(crate) fn shift_table(&self, a: i64, k: u64) -> Table {
        self.memo(&self.shift, (a, k), || {
            (0..=k)
                .filter_map(|j| {
                    let c = binom_int(a, k - j);
                    (c != BigInt::from(0)).then_some((j, c))
                })
                .collect()
        })
    }
}

impl Default for StructureCache {
    fn default() -> Self {
        Self::new()
    }
}

/// binom(h,a)·binom(h,b) = Σ_{k=max(a,b)}^{a+b} binom(k,a)·binom(a,a+b−k)·binom(h,k).
fn hh_coefficients(a: u64, b: u64) -> Vec<(u64, BigInt)> {
    (a.max(b)..=a + b)
        .map(|k| {
            let c = binom_big(&BigInt::from(k), a) * binom_big(&BigInt::from(a), a + b - k);
            (k, c)
        })
        .collect()
}

/// Dense polynomial in the binom(h, j) basis used inside products.
struct Dense<R: Ring> {
    coeffs: Vec<R::Elem>,
}

impl<R: Ring> Dense<R> {
    fn shifted(ring: R, cache: &StructureCache, a: i64, k: u64) -> Self {
        let mut coeffs = vec![ring.zero(); k as usize + 1];
        for (j, c) in cache.shift_table(a, k).iter() {
            coeffs[*j as usize] = ring.from_bigint(c);
        }
        Dense { coeffs }
    }

    fn mul(&self, ring: R, cache: &StructureCache, other: &Self) -> Self {
        let mut out = vec![ring.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            if ring.is_zero(x) {
                continue;
            }
            for (j, y) in other.coeffs.iter().enumerate() {
                if ring.is_zero(y) {
                    continue;
                }
                let xy = ring.mul(x, y);
                for (k, c) in cache.hh_table(i as u64, j as u64).iter() {
                    let slot = &mut out[*k as usize];
                    *slot = ring.add(slot, &ring.mul(&xy, &ring.from_bigint(c)));
                }
            }
        }
        Dense { coeffs: out }
    }
}

/// The product binom(h − 2A, b1)·binom(h + shift, k)·binom(h − 2C, b2) that
/// sits between the merged f- and e-parts of a monomial product.
fn middle_poly<R: Ring>(
    ring: R,
    cache: &StructureCache,
    factors: [(i64, u64); 3],
) -> Dense<R> {
    let mut polys: Vec<Dense<R>> =
        factors.iter().map(|&(a, k)| Dense::shifted(ring, cache, a, k)).collect();
    polys.sort_by_key(|d| d.coeffs.len());
    let first = polys.remove(0);
    polys.into_iter().fold(first, |acc, d| acc.mul(ring, cache, &d))
}

/// Accumulates the product of two basis monomials (times `scale`) into `out`.
pub(crate) fn mul_monomials<R: Ring>(
    ring: R,
    cache: &StructureCache,
    lhs: Monomial,
    rhs: Monomial,
    scale: &R::Elem,
    out: &mut Element<R>,
) {
    let (a1, b1, c1) = (lhs.a, lhs.b, lhs.c);
    let (a2, b2, c2) = (rhs.a, rhs.b, rhs.c);
    for k in 0..=c1.min(a2) {
        let f_part = a2 - k;
        let e_part = c1 - k;
        let merge = ring.mul(&ring.binom((a1 + f_part) as i64, a1), &ring.binom((e_part + c2) as i64, c2));
        if ring.is_zero(&merge) {
            continue;
        }
        let merge = ring.mul(&merge, scale);
        let straighten_shift = 2 * k as i64 - a2 as i64 - c1 as i64;
        let poly = middle_poly(
            ring,
            cache,
            [(-2 * f_part as i64, b1), (straighten_shift, k), (-2 * e_part as i64, b2)],
        );
        for (b, c) in poly.coeffs.iter().enumerate() {
            if ring.is_zero(c) {
                continue;
            }
            out.add_term(Monomial::new(a1 + f_part, b as u64, e_part + c2), ring.mul(&merge, c));
        }
    }
}

/// Normal-ordered expansion of e^(r)·f^(s).
pub fn ef_straighten<R: Ring>(ring: R, r: u64, s: u64) -> Element<R> {
    let mut out = Element::zero(ring);
    for k in 0..=r.min(s) {
        let shift = 2 * k as i64 - s as i64 - r as i64;
        for (j, c) in hshift_expand(ring, shift, k).iter() {
            out.add_term(Monomial::new(s - k, *j, r - k), c.clone());
        }
    }
    out
}

/// binom(h + a, k) in the binom(h, j) basis.
pub fn hshift_expand<R: Ring>(ring: R, a: i64, k: u64) -> HPoly<R> {
    let mut out = HPoly::zero(ring);
    for (j, c) in StructureCache::global().shift_table(a, k).iter() {
        out.add_term(*j, ring.from_bigint(c));
    }
    out
}

/// binom(h, a)·binom(h, b) in the binom(h, k) basis.
pub fn hh_mul<R: Ring>(ring: R, a: u64, b: u64) -> HPoly<R> {
    let mut out = HPoly::zero(ring);
    for (k, c) in StructureCache::global().hh_table(a, b).iter() {
        out.add_term(*k, ring.from_bigint(c));
    }
    out
}

/// Which divided power binom(h, k) is moved past.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    E,
    F,
}

/// The commutation rule for binom(h, k) against a divided power of degree m:
/// e^(m)·binom(h,k) = binom(h−2m,k)·e^(m) and f^(m)·binom(h,k) = binom(h+2m,k)·f^(m).
/// Returns the shifted binomial on the left of the divided power.
pub fn h_past_ef<R: Ring>(ring: R, k: u64, m: u64, side: Side) -> HPoly<R> {
    let shift = match side {
        Side::E => -2 * m as i64,
        Side::F => 2 * m as i64,
    };
    hshift_expand(ring, shift, k)
}

/// Checks the closed-form hh_mul coefficients against evaluation at
/// h = 0..=a+b, which determines a polynomial of degree a + b.
pub fn validate_hh_mul(max: u64) -> Result<(), (u64, u64)> {
    for a in 0..=max {
        for b in 0..=max {
            let table = hh_coefficients(a, b);
            for h in 0..=(a + b) as i64 {
                let lhs = binom_int(h, a) * binom_int(h, b);
                let rhs: BigInt = table.iter().map(|(k, c)| c * binom_int(h, *k)).sum();
                if lhs != rhs {
                    return Err((a, b));
                }
            }
        }
    }
    Ok(())
}
