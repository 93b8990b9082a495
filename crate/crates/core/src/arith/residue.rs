use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::fmt;

/// An element of ℤ/p^m, stored as its least non-negative representative.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Residue {
    value: BigInt,
    p: u64,
    m: u32,
}

impl Residue {
    pub fn new(value: BigInt, p: u64, m: u32) -> Self {
        let modulus = Self::modulus_of(p, m);
        Residue { value: value.mod_floor(&modulus), p, m }
    }

    pub fn modulus_of(p: u64, m: u32) -> BigInt {
        num_traits::pow(BigInt::from(p), m as usize)
    }

    pub fn modulus(&self) -> BigInt {
        Self::modulus_of(self.p, self.m)
    }

    pub fn value(&self) -> &BigInt {
        &self.value
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn exponent(&self) -> u32 {
        self.m
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}
