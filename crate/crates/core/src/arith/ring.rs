use super::{
    binom_int, binom_mod_p_signed, inv_mod, mod_small, odd_prime, ArithError, PLocalRational,
    Residue,
};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Coefficient ring of an algebra element.
///
/// Implementors are small `Copy` descriptors; the ring data (the prime, the
/// exponent) lives here rather than in every coefficient.
pub trait Ring: Copy + fmt::Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + fmt::Debug + PartialEq + Send + Sync;

    fn descriptor(&self) -> RingDescriptor;
    fn zero(&self) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn from_bigint(&self, n: &BigInt) -> Self::Elem;
    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn neg(&self, x: &Self::Elem) -> Self::Elem;
    fn mul(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, x: &Self::Elem) -> bool;
    /// Exact division. Fails where the quotient does not exist in the ring.
    fn checked_div(&self, x: &Self::Elem, y: &Self::Elem) -> Result<Self::Elem, ArithError>;
    fn format(&self, x: &Self::Elem) -> String;
    fn parse(&self, s: &str) -> Result<Self::Elem, ArithError>;

    fn one(&self) -> Self::Elem {
        self.from_i64(1)
    }

    fn sub(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        self.add(x, &self.neg(y))
    }

    fn is_one(&self, x: &Self::Elem) -> bool {
        *x == self.one()
    }

    /// Generalized binomial coefficient as a ring element.
    fn binom(&self, n: i64, k: u64) -> Self::Elem {
        self.from_bigint(&binom_int(n, k))
    }

    fn pow(&self, x: &Self::Elem, e: u64) -> Self::Elem {
        (0..e).fold(self.one(), |acc, _| self.mul(&acc, x))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RingKind {
    #[serde(rename = "Z")]
    Integers,
    #[serde(rename = "Zp-local")]
    PLocal,
    #[serde(rename = "Fp")]
    PrimeField,
    #[serde(rename = "Z/p^m")]
    Residues,
}

/// Serialized form of a coefficient ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RingDescriptor {
    pub ring: RingKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Integers;

impl Ring for Integers {
    type Elem = BigInt;

    fn descriptor(&self) -> RingDescriptor {
        RingDescriptor { ring: RingKind::Integers, p: None, m: None }
    }
    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn from_i64(&self, n: i64) -> BigInt {
        BigInt::from(n)
    }
    fn from_bigint(&self, n: &BigInt) -> BigInt {
        n.clone()
    }
    fn add(&self, x: &BigInt, y: &BigInt) -> BigInt {
        x + y
    }
    fn neg(&self, x: &BigInt) -> BigInt {
        -x
    }
    fn mul(&self, x: &BigInt, y: &BigInt) -> BigInt {
        x * y
    }
    fn is_zero(&self, x: &BigInt) -> bool {
        x.is_zero()
    }
    fn checked_div(&self, x: &BigInt, y: &BigInt) -> Result<BigInt, ArithError> {
        if y.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        let (q, r) = x.div_rem(y);
        if !r.is_zero() {
            return Err(ArithError::NotDivisible { num: x.to_string(), den: y.to_string() });
        }
        Ok(q)
    }
    fn format(&self, x: &BigInt) -> String {
        x.to_string()
    }
    fn parse(&self, s: &str) -> Result<BigInt, ArithError> {
        s.trim().parse().map_err(|_| ArithError::Parse(s.to_string()))
    }
}

/// ℤ localized at p.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PLocal {
    p: u64,
}

impl PLocal {
    pub fn new(p: u64) -> Result<Self, ArithError> {
        if !super::is_prime(p) {
            return Err(ArithError::NotPrime(p));
        }
        Ok(PLocal { p })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }
}

impl Ring for PLocal {
    type Elem = PLocalRational;

    fn descriptor(&self) -> RingDescriptor {
        RingDescriptor { ring: RingKind::PLocal, p: Some(self.p), m: None }
    }
    fn zero(&self) -> PLocalRational {
        PLocalRational::zero(self.p)
    }
    fn from_i64(&self, n: i64) -> PLocalRational {
        PLocalRational::from_int(n, self.p)
    }
    fn from_bigint(&self, n: &BigInt) -> PLocalRational {
        PLocalRational::from_int(n.clone(), self.p)
    }
    fn add(&self, x: &PLocalRational, y: &PLocalRational) -> PLocalRational {
        x.add(y)
    }
    fn neg(&self, x: &PLocalRational) -> PLocalRational {
        x.neg()
    }
    fn mul(&self, x: &PLocalRational, y: &PLocalRational) -> PLocalRational {
        x.mul(y)
    }
    fn is_zero(&self, x: &PLocalRational) -> bool {
        x.is_zero()
    }
    fn checked_div(
        &self,
        x: &PLocalRational,
        y: &PLocalRational,
    ) -> Result<PLocalRational, ArithError> {
        x.checked_div(y)
    }
    fn format(&self, x: &PLocalRational) -> String {
        x.to_string()
    }
    fn parse(&self, s: &str) -> Result<PLocalRational, ArithError> {
        let err = || ArithError::Parse(s.to_string());
        let (n, d) = match s.trim().split_once('/') {
            Some((n, d)) => (n.trim().parse().map_err(|_| err())?, d.trim().parse().map_err(|_| err())?),
            None => (s.trim().parse().map_err(|_| err())?, BigInt::one()),
        };
        PLocalRational::from_ratio(n, d, self.p)
    }
}

/// F_p with coefficients stored as `u64` in `[0, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// Any prime is accepted here; the distribution-algebra layer insists on
    /// p >= 3 on its own.
    pub fn new(p: u64) -> Result<Self, ArithError> {
        if !super::is_prime(p) {
            return Err(ArithError::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn odd(p: u64) -> Result<Self, ArithError> {
        odd_prime(p).map(|p| PrimeField { p })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn inv(&self, x: u64) -> Option<u64> {
        (x % self.p != 0).then(|| inv_mod(x, self.p))
    }
}

impl Ring for PrimeField {
    type Elem = u64;

    fn descriptor(&self) -> RingDescriptor {
        RingDescriptor { ring: RingKind::PrimeField, p: Some(self.p), m: None }
    }
    fn zero(&self) -> u64 {
        0
    }
    fn from_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }
    fn from_bigint(&self, n: &BigInt) -> u64 {
        mod_small(n, self.p)
    }
    fn add(&self, x: &u64, y: &u64) -> u64 {
        (x + y) % self.p
    }
    fn neg(&self, x: &u64) -> u64 {
        (self.p - x % self.p) % self.p
    }
    fn mul(&self, x: &u64, y: &u64) -> u64 {
        x * y % self.p
    }
    fn is_zero(&self, x: &u64) -> bool {
        *x % self.p == 0
    }
    fn checked_div(&self, x: &u64, y: &u64) -> Result<u64, ArithError> {
        let inv = self.inv(*y).ok_or(ArithError::DivisionByZero)?;
        Ok(x * inv % self.p)
    }
    fn format(&self, x: &u64) -> String {
        x.to_string()
    }
    fn parse(&self, s: &str) -> Result<u64, ArithError> {
        let n: BigInt = s.trim().parse().map_err(|_| ArithError::Parse(s.to_string()))?;
        Ok(self.from_bigint(&n))
    }
    fn binom(&self, n: i64, k: u64) -> u64 {
        binom_mod_p_signed(n, k, self.p)
    }
}

/// ℤ/p^m.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ResidueRing {
    p: u64,
    m: u32,
}

impl ResidueRing {
    pub fn new(p: u64, m: u32) -> Result<Self, ArithError> {
        if !super::is_prime(p) {
            return Err(ArithError::NotPrime(p));
        }
        Ok(ResidueRing { p, m })
    }

    pub fn modulus(&self) -> BigInt {
        Residue::modulus_of(self.p, self.m)
    }
}

impl Ring for ResidueRing {
    type Elem = Residue;

    fn descriptor(&self) -> RingDescriptor {
        RingDescriptor { ring: RingKind::Residues, p: Some(self.p), m: Some(self.m) }
    }
    fn zero(&self) -> Residue {
        Residue::new(BigInt::zero(), self.p, self.m)
    }
    fn from_i64(&self, n: i64) -> Residue {
        Residue::new(BigInt::from(n), self.p, self.m)
    }
    fn from_bigint(&self, n: &BigInt) -> Residue {
        Residue::new(n.clone(), self.p, self.m)
    }
    fn add(&self, x: &Residue, y: &Residue) -> Residue {
        Residue::new(x.value() + y.value(), self.p, self.m)
    }
    fn neg(&self, x: &Residue) -> Residue {
        Residue::new(-x.value(), self.p, self.m)
    }
    fn mul(&self, x: &Residue, y: &Residue) -> Residue {
        Residue::new(x.value() * y.value(), self.p, self.m)
    }
    fn is_zero(&self, x: &Residue) -> bool {
        x.is_zero()
    }
    fn checked_div(&self, x: &Residue, y: &Residue) -> Result<Residue, ArithError> {
        let modulus = self.modulus();
        let ext = y.value().extended_gcd(&modulus);
        if ext.gcd.is_one() {
            return Ok(Residue::new(x.value() * ext.x, self.p, self.m));
        }
        // Non-unit divisor: solvable iff gcd divides x; the quotient is then
        // only determined modulo p^m / gcd, so refuse.
        Err(ArithError::NotDivisible { num: x.to_string(), den: y.to_string() })
    }
    fn format(&self, x: &Residue) -> String {
        x.to_string()
    }
    fn parse(&self, s: &str) -> Result<Residue, ArithError> {
        let n: BigInt = s.trim().parse().map_err(|_| ArithError::Parse(s.to_string()))?;
        Ok(self.from_bigint(&n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn descriptors_serialize() {
        let d = PrimeField::new(5).unwrap().descriptor();
        assert_eq!(serde_json::to_string(&d).unwrap(), r#"{"ring":"Fp","p":5}"#);
        let d = Integers.descriptor();
        assert_eq!(serde_json::to_string(&d).unwrap(), r#"{"ring":"Z"}"#);
        let d = ResidueRing::new(3, 3).unwrap().descriptor();
        assert_eq!(serde_json::to_string(&d).unwrap(), r#"{"ring":"Z/p^m","p":3,"m":3}"#);
    }

    #[test]
    fn residue_ring_units() {
        let r = ResidueRing::new(5, 3).unwrap();
        let two = r.from_i64(2);
        let half = r.checked_div(&r.one(), &two).unwrap();
        assert_eq!(r.mul(&half, &two), r.one());
        assert!(r.checked_div(&r.one(), &r.from_i64(5)).is_err());
    }

    #[test]
    fn field_binom_negative_top() {
        let f = PrimeField::new(5).unwrap();
        // binom(-1, 4) = 1, binom(-1, 3) = -1
        assert_eq!(f.binom(-1, 4), 1);
        assert_eq!(f.binom(-1, 3), 4);
    }
}
