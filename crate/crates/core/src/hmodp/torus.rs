//! The torus part of H over F_p as functions on ℤ/p^N.
//!
//! By Lucas, binom(h, b) mod p only depends on h mod p^N once b < p^N, and the
//! functions h ↦ binom(h, b), b < p^N, form a basis of all F_p-valued functions
//! on ℤ/p^N. Products of torus elements become pointwise products and moving
//! them past e^(m), f^(m) becomes a translation.

use crate::arith::{inv_mod, lucas, pow_mod, pow_u64};
#[cfg(test)]
use crate::arith::binom_mod_p_signed;
use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

pub(crate) type Values = Vec<u32>;

/// Smallest N with n < p^N.
pub(crate) fn level_for(n: u64, p: u64) -> u32 {
    let mut level = 0;
    let mut bound = 1u64;
    while n >= bound {
        bound *= p;
        level += 1;
    }
    level
}

/// Values of h ↦ binom(h + shift, k) on ℤ/p^N, k < p^N. Shared across threads.
pub(crate) fn binom_values(p: u64, level: u32, k: u64) -> Arc<Values> {
    static CACHE: OnceLock<RwLock<HashMap<(u64, u32, u64), Arc<Values>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let key = (p, level, k);
    if let Some(v) = cache.read().expect("binom cache poisoned").get(&key) {
        return v.clone();
    }
    let size = pow_u64(p, level);
    debug_assert!(k < size.max(1));
    let v: Values = (0..size).map(|x| lucas(x, k, p) as u32).collect();
    let v = Arc::new(v);
    cache.write().expect("binom cache poisoned").entry(key).or_insert(v).clone()
}

/// Repeats a p^from-periodic function out to ℤ/p^to.
pub(crate) fn tile(values: &[u32], p: u64, to: u32) -> Values {
    let size = pow_u64(p, to) as usize;
    values.iter().copied().cycle().take(size).collect()
}

/// Digit-wise transform by a p×p matrix along every base-p axis.
fn tensor_transform(values: &mut [u32], p: u64, level: u32, matrix: &[Vec<u64>]) {
    let p_us = p as usize;
    let mut stride = 1usize;
    let mut buf = vec![0u64; p_us];
    for _ in 0..level {
        let block = stride * p_us;
        for start in (0..values.len()).step_by(block) {
            for offset in 0..stride {
                for (d, slot) in buf.iter_mut().enumerate() {
                    *slot = values[start + offset + d * stride] as u64;
                }
                for (row, coeffs) in matrix.iter().enumerate() {
                    let acc = coeffs.iter().zip(&buf).map(|(m, x)| m * x).sum::<u64>() % p;
                    values[start + offset + row * stride] = acc as u32;
                }
            }
        }
        stride = block;
    }
}

/// Coefficients c_b (b < p^N) with Σ c_b binom(h, b) = values(h).
pub(crate) fn values_to_binom(values: &[u32], p: u64, level: u32) -> Values {
    // inverse of the Pascal matrix: (−1)^{b−h} binom(b, h)
    let matrix: Vec<Vec<u64>> = (0..p)
        .map(|b| {
            (0..p)
                .map(|h| {
                    let c = lucas(b, h, p);
                    if (b + h) % 2 == 1 && c != 0 {
                        p - c
                    } else {
                        c
                    }
                })
                .collect()
        })
        .collect();
    let mut out = values.to_vec();
    tensor_transform(&mut out, p, level, &matrix);
    out
}

/// Values on ℤ/p^N of Σ c_b binom(h, b).
pub(crate) fn binom_to_values(coeffs: &[u32], p: u64, level: u32) -> Values {
    let matrix: Vec<Vec<u64>> = (0..p).map(|h| (0..p).map(|b| lucas(h, b, p)).collect()).collect();
    let mut out = coeffs.to_vec();
    tensor_transform(&mut out, p, level, &matrix);
    out
}

/// Coefficients in the monomials Π d_i(h)^{b_i}, where d_i(h) is the i-th
/// base-p digit of h and every b_i < p. Index b = Σ b_i p^i.
pub(crate) fn values_to_digit_monomials(values: &[u32], p: u64, level: u32) -> Values {
    let mut out = values.to_vec();
    tensor_transform(&mut out, p, level, &vandermonde_inverse(p));
    out
}

/// Inverse of the matrix (d^b) for d, b ∈ F_p, with 0^0 = 1.
fn vandermonde_inverse(p: u64) -> Vec<Vec<u64>> {
    let n = p as usize;
    let mut m: Vec<Vec<u64>> =
        (0..p).map(|d| (0..p).map(|b| pow_mod(d, b, p) % p).collect()).collect();
    let mut inv: Vec<Vec<u64>> = (0..n).map(|i| (0..n).map(|j| (i == j) as u64).collect()).collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| m[r][col] != 0).expect("Vandermonde matrix is invertible");
        m.swap(col, pivot);
        inv.swap(col, pivot);
        let s = inv_mod(m[col][col], p);
        for j in 0..n {
            m[col][j] = m[col][j] * s % p;
            inv[col][j] = inv[col][j] * s % p;
        }
        for r in 0..n {
            if r != col && m[r][col] != 0 {
                let factor = m[r][col];
                for j in 0..n {
                    m[r][j] = (m[r][j] + p * p - factor * m[col][j] % p) % p;
                    inv[r][j] = (inv[r][j] + p * p - factor * inv[col][j] % p) % p;
                }
            }
        }
    }
    // rows of `inv` map values at d to coefficients of d^b
    inv
}
