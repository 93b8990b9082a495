use super::{inv_mod, mod_small, vp, ArithError, Valuation};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

/// A rational number num/den with den > 0, gcd(num, den) = 1 and p ∤ den.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PLocalRational {
    num: BigInt,
    den: BigInt,
    p: u64,
}

impl PLocalRational {
    pub fn from_int(n: impl Into<BigInt>, p: u64) -> Self {
        PLocalRational { num: n.into(), den: BigInt::one(), p }
    }

    pub fn zero(p: u64) -> Self {
        Self::from_int(0, p)
    }

    /// Builds num/den, failing when the reduced denominator is divisible by p.
    pub fn from_ratio(num: BigInt, den: BigInt, p: u64) -> Result<Self, ArithError> {
        if den.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = (num / &g, den / &g);
        if den.is_negative() {
            num = -num;
            den = -den;
        }
        if vp(&den, p) != Valuation::Finite(0) {
            return Err(ArithError::NotPLocal { value: format!("{num}/{den}"), p });
        }
        Ok(PLocalRational { num, den, p })
    }

    pub fn numer(&self) -> &BigInt {
        &self.num
    }

    pub fn denom(&self) -> &BigInt {
        &self.den
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn valuation(&self) -> Valuation {
        vp(&self.num, self.p)
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.p, other.p);
        let num = &self.num * &other.den + &other.num * &self.den;
        let den = &self.den * &other.den;
        Self::from_ratio(num, den, self.p).expect("p-local sums stay p-local")
    }

    pub fn neg(&self) -> Self {
        PLocalRational { num: -&self.num, den: self.den.clone(), p: self.p }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.p, other.p);
        let num = &self.num * &other.num;
        let den = &self.den * &other.den;
        Self::from_ratio(num, den, self.p).expect("p-local products stay p-local")
    }

    /// Exact quotient; an error when the result would leave ℤ_(p).
    pub fn checked_div(&self, other: &Self) -> Result<Self, ArithError> {
        if other.num.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Self::from_ratio(&self.num * &other.den, &self.den * &other.num, self.p)
    }

    /// Image in F_p.
    pub fn reduce(&self) -> u64 {
        let n = mod_small(&self.num, self.p);
        let d = mod_small(&self.den, self.p);
        n * inv_mod(d, self.p) % self.p
    }

    /// Image in ℤ/modulus for a modulus coprime to the denominator.
    pub fn reduce_mod(&self, modulus: &BigInt) -> BigInt {
        let d = self.den.mod_floor(modulus);
        let ext = d.extended_gcd(modulus);
        debug_assert!(ext.gcd.is_one());
        (&self.num * ext.x).mod_floor(modulus)
    }
}

impl fmt::Display for PLocalRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}
