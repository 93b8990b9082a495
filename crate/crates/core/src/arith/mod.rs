//! Exact integer, p-local rational and residue arithmetic.
//!
//! Everything here is pure and allocation-light; the algebra modules build on
//! [`Ring`] so that the same straightening code runs over ℤ, ℤ_(p), F_p and
//! ℤ/p^m.

mod plocal;
mod residue;
mod ring;

pub use num_bigint::BigInt;
pub use plocal::PLocalRational;
pub use residue::Residue;
pub use ring::{Integers, PLocal, PrimeField, Ring, RingDescriptor, RingKind, ResidueRing};

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ArithError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime {0} is not supported here (need p >= 3)")]
    PrimeTooSmall(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("{num} is not divisible by {den}")]
    NotDivisible { num: String, den: String },
    #[error("{value} is not {p}-local")]
    NotPLocal { value: String, p: u64 },
    #[error("cannot parse coefficient {0:?}")]
    Parse(String),
}

/// Generalized binomial coefficient n(n-1)…(n-k+1)/k! for any integer `n`.
pub fn binom_int(n: i64, k: u64) -> BigInt {
    binom_big(&BigInt::from(n), k)
}

pub fn binom_big(n: &BigInt, k: u64) -> BigInt {
    // Each partial product c_i = binom(n, i) is an integer, so the running
    // division is exact.
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - BigInt::from(i);
        acc /= BigInt::from(i + 1);
    }
    acc
}

/// k! as a big integer.
pub fn factorial(k: u64) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// p-adic valuation; `Infinite` for zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(u64),
    Infinite,
}

impl Valuation {
    pub fn is_at_least(self, e: u64) -> bool {
        self >= Valuation::Finite(e)
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(e) => write!(f, "{e}"),
            Valuation::Infinite => write!(f, "inf"),
        }
    }
}

pub fn vp(n: &BigInt, p: u64) -> Valuation {
    if n.is_zero() {
        return Valuation::Infinite;
    }
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut e = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return Valuation::Finite(e);
        }
        n = q;
        e += 1;
    }
}

/// Trial division; the primes used here are tiny.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Checks `p` is an odd prime.
pub fn odd_prime(p: u64) -> Result<u64, ArithError> {
    if !is_prime(p) {
        return Err(ArithError::NotPrime(p));
    }
    if p < 3 {
        return Err(ArithError::PrimeTooSmall(p));
    }
    Ok(p)
}

/// Base-p digits, least significant first.
pub fn digits(mut n: u64, p: u64) -> Vec<u64> {
    let mut out = Vec::new();
    while n > 0 {
        out.push(n % p);
        n /= p;
    }
    out
}

pub fn from_digits(ds: &[u64], p: u64) -> u64 {
    ds.iter().rev().fold(0, |acc, &d| acc * p + d)
}

pub fn pow_u64(p: u64, e: u32) -> u64 {
    p.checked_pow(e).expect("prime power overflows u64")
}

/// binom(n, k) mod p, computed digit by digit.
pub fn binom_mod_p_lucas(n: u64, k: u64, p: u64) -> Residue {
    Residue::new(BigInt::from(lucas(n, k, p)), p, 1)
}

pub(crate) fn lucas(mut n: u64, mut k: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    while k > 0 {
        let (nd, kd) = (n % p, k % p);
        if kd > nd {
            return 0;
        }
        acc = acc * small_binom_mod(nd, kd, p) % p;
        n /= p;
        k /= p;
    }
    acc
}

/// binom(n, k) mod p for n, k < p.
fn small_binom_mod(n: u64, k: u64, p: u64) -> u64 {
    let mut num = 1u64;
    let mut den = 1u64;
    for i in 0..k {
        num = num * ((n - i) % p) % p;
        den = den * ((i + 1) % p) % p;
    }
    num * inv_mod(den, p) % p
}

/// Inverse of a unit modulo a prime.
pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a % p, p - 2, p)
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = (acc as u128 * base as u128 % m as u128) as u64;
        }
        base = (base as u128 * base as u128 % m as u128) as u64;
        exp >>= 1;
    }
    acc
}

/// Generalized binom(n, k) mod p for signed `n`, via
/// binom(-m, k) = (-1)^k binom(m + k - 1, k).
pub(crate) fn binom_mod_p_signed(n: i64, k: u64, p: u64) -> u64 {
    if n >= 0 {
        lucas(n as u64, k, p)
    } else {
        let top = (k as i128 - n as i128 - 1) as u64;
        let v = lucas(top, k, p);
        if k % 2 == 1 && v != 0 {
            p - v
        } else {
            v
        }
    }
}

/// Least non-negative residue of a big integer modulo a small modulus.
pub(crate) fn mod_small(n: &BigInt, m: u64) -> u64 {
    let r = n.mod_floor(&BigInt::from(m));
    r.to_u64().expect("residue fits")
}
