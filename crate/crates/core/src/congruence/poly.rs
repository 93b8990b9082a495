use crate::arith::{binom_int, BigInt, PLocalRational};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// A polynomial in h with exact rational coefficients, power basis.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct IntPoly {
    coeffs: Vec<BigRational>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: vec![] }
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::from_coeffs(vec![BigRational::from_integer(c.into())])
    }

    /// a·h + b
    pub fn linear(a: i64, b: i64) -> Self {
        Self::from_coeffs(vec![BigRational::from_integer(b.into()), BigRational::from_integer(a.into())])
    }

    pub fn from_coeffs(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = BigRational::zero();
        Self::from_coeffs(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&zero) + other.coeffs.get(i).unwrap_or(&zero))
                .collect(),
        )
    }

    pub fn neg(&self) -> Self {
        IntPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::from_coeffs(out)
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::constant(1), |acc, _| acc.mul(self))
    }

    pub fn eval(&self, x: &BigInt) -> BigRational {
        let x = BigRational::from_integer(x.clone());
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * &x + c)
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * BigRational::from_integer(i.into())).collect(),
        )
    }

    /// Coefficients c_k with self = Σ c_k binom(h, k).
    pub fn binomial_coefficients(&self) -> Vec<BigRational> {
        let Some(d) = self.degree() else { return vec![] };
        let mut row: Vec<BigRational> = (0..=d as i64).map(|h| self.eval(&h.into())).collect();
        let mut out = Vec::with_capacity(d + 1);
        while !row.is_empty() {
            out.push(row[0].clone());
            row = row.windows(2).map(|w| &w[1] - &w[0]).collect();
        }
        out
    }

    /// Rebuilds the power basis from binomial-basis coefficients.
    pub fn from_binomial_coefficients(cs: &[BigRational]) -> Self {
        let mut out = Self::zero();
        for (k, c) in cs.iter().enumerate() {
            // binom(h, k) = h(h−1)⋯(h−k+1)/k!
            let falling = (0..k as i64).fold(Self::constant(1), |acc, i| acc.mul(&Self::linear(1, -i)));
            let kfact: BigInt = (1..=k as u64).map(BigInt::from).product();
            out = out.add(&falling.scale(&(c / BigRational::from_integer(kfact))));
        }
        out
    }
}

/// Whether a rational has no p in its denominator.
pub fn is_p_local(x: &BigRational, p: u64) -> bool {
    (x.denom() % BigInt::from(p)).is_positive()
}

/// The image in F_p of a p-local rational.
pub fn reduce_rational(x: &BigRational, p: u64) -> Option<u64> {
    PLocalRational::from_ratio(x.numer().clone(), x.denom().clone(), p).ok().map(|r| r.reduce())
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "h".to_string(),
                _ => format!("h^{i}"),
            };
            let coef = if c.is_one() && i > 0 {
                String::new()
            } else if (-c).is_one() && i > 0 {
                "-".to_string()
            } else {
                format!("{c}")
            };
            parts.push(format!("{coef}{mono}"));
        }
        write!(f, "{}", parts.join(" + ").replace("+ -", "- "))
    }
}

/// Σ_i Q_i(h) δ^i.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaPoly {
    coeffs: Vec<IntPoly>,
}

impl DeltaPoly {
    pub fn from_coeffs(mut coeffs: Vec<IntPoly>) -> Self {
        while coeffs.last().is_some_and(IntPoly::is_zero) {
            coeffs.pop();
        }
        DeltaPoly { coeffs }
    }

    /// Π (δ − r_l(h)).
    pub fn product_of_roots(roots: &[IntPoly]) -> Self {
        let mut coeffs = vec![IntPoly::constant(1)];
        for r in roots {
            let mut next = vec![IntPoly::zero(); coeffs.len() + 1];
            for (i, c) in coeffs.iter().enumerate() {
                next[i + 1] = next[i + 1].add(c);
                next[i] = next[i].sub(&c.mul(r));
            }
            coeffs = next;
        }
        Self::from_coeffs(coeffs)
    }

    pub fn coeffs(&self) -> &[IntPoly] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> IntPoly {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::from_coeffs((0..n).map(|i| self.coeff(i).sub(&other.coeff(i))).collect())
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|c| c.scale(s)).collect())
    }

    pub fn eval(&self, h: &BigInt, delta: &BigInt) -> BigRational {
        let d = BigRational::from_integer(delta.clone());
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * &d + c.eval(h))
    }

    /// R_m in Σ R_m(h) (δ − δ0)^m.
    pub fn taylor_coeff(&self, m: usize, delta0: &BigInt) -> IntPoly {
        let mut out = IntPoly::zero();
        for (i, c) in self.coeffs.iter().enumerate().skip(m) {
            // δ^i = Σ_m binom(i, m) δ0^{i−m} (δ − δ0)^m
            let factor = binom_int(i as i64, m as u64) * delta0.pow((i - m) as u32);
            out = out.add(&c.scale(&BigRational::from_integer(factor)));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn arithmetic() {
        let x = IntPoly::linear(1, 1);
        let sq = x.mul(&x);
        assert_eq!(sq.to_string(), "h^2 + 2h + 1");
        assert_eq!(sq.derivative(), IntPoly::linear(2, 2));
        assert_eq!(sq.eval(&3.into()), q(16, 1));
        assert_eq!(IntPoly::linear(-1, 0).to_string(), "-h");
    }

    #[test]
    fn binomial_basis_round_trip() {
        let p = IntPoly::from_coeffs(vec![q(1, 2), q(-3, 4), q(0, 1), q(5, 6)]);
        let cs = p.binomial_coefficients();
        assert_eq!(IntPoly::from_binomial_coefficients(&cs), p);
        // h(h−1)/2 is integer-valued with binomial coordinates (0, 0, 1)
        let half = IntPoly::from_coeffs(vec![q(0, 1), q(-1, 2), q(1, 2)]);
        assert_eq!(half.binomial_coefficients(), vec![q(0, 1), q(0, 1), q(1, 1)]);
    }

    #[test]
    fn delta_polys() {
        let roots = [IntPoly::constant(1), IntPoly::constant(4)];
        let d = DeltaPoly::product_of_roots(&roots);
        assert_eq!(d.eval(&0.into(), &5.into()), q(4, 1));
        // (δ−1)(δ−4) around δ0 = 2: (y+1)(y−2) = y² − y − 2
        assert_eq!(d.taylor_coeff(1, &2.into()), IntPoly::constant(-1));
        assert_eq!(d.taylor_coeff(0, &2.into()), IntPoly::constant(-2));
    }

    #[test]
    fn locality() {
        assert!(is_p_local(&q(1, 2), 3));
        assert!(!is_p_local(&q(1, 9), 3));
        assert_eq!(reduce_rational(&q(1, 2), 3), Some(2));
        assert_eq!(reduce_rational(&q(1, 3), 3), None);
    }
}
