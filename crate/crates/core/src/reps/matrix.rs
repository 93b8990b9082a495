use serde::Serialize;
use std::fmt;

/// A dense square matrix over F_p, row-major.
#[derive(Clone, PartialEq, Eq, Serialize)]
pub struct FpMatrix {
    p: u64,
    rows: Vec<Vec<u64>>,
}

impl FpMatrix {
    pub fn zero(p: u64, n: usize) -> Self {
        FpMatrix { p, rows: vec![vec![0; n]; n] }
    }

    pub fn identity(p: u64, n: usize) -> Self {
        let mut out = Self::zero(p, n);
        for i in 0..n {
            out.rows[i][i] = 1;
        }
        out
    }

    pub fn diagonal(p: u64, d: impl IntoIterator<Item = u64>) -> Self {
        let d: Vec<u64> = d.into_iter().collect();
        let mut out = Self::zero(p, d.len());
        for (i, x) in d.into_iter().enumerate() {
            out.rows[i][i] = x % p;
        }
        out
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.rows[i][j]
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    /// Adds c to entry (i, j).
    pub fn add_at(&mut self, i: usize, j: usize, c: u64) {
        self.rows[i][j] = (self.rows[i][j] + c % self.p) % self.p;
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().flatten().all(|x| *x == 0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let p = self.p;
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| (x + y) % p).collect())
            .collect();
        FpMatrix { p, rows }
    }

    pub fn scale(&self, s: u64) -> Self {
        let (p, s) = (self.p, s % self.p);
        FpMatrix { p, rows: self.rows.iter().map(|r| r.iter().map(|x| x * s % p).collect()).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(self.p - 1))
    }

    pub fn add_scalar(&self, s: u64) -> Self {
        self.add(&Self::identity(self.p, self.dim()).scale(s))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (p, n) = (self.p, self.dim());
        let mut out = Self::zero(p, n);
        for i in 0..n {
            for k in 0..n {
                let a = self.rows[i][k];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    out.rows[i][j] = (out.rows[i][j] + a * other.rows[k][j]) % p;
                }
            }
        }
        out
    }

    pub fn pow(&self, e: u64) -> Self {
        (0..e).fold(Self::identity(self.p, self.dim()), |acc, _| acc.mul(self))
    }

    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn apply(&self, v: &[u64]) -> Vec<u64> {
        self.rows.iter().map(|r| r.iter().zip(v).map(|(a, b)| a * b % self.p).sum::<u64>() % self.p).collect()
    }

    /// The block on the given rows and columns.
    pub fn restrict(&self, idx: &[usize]) -> Self {
        FpMatrix { p: self.p, rows: idx.iter().map(|i| idx.iter().map(|j| self.rows[*i][*j]).collect()).collect() }
    }
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "mod {} ", self.p)?;
        f.debug_list().entries(&self.rows).finish()
    }
}
