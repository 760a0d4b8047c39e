//! Arithmetic in the prime field Z_p and dense linear algebra over it.
//!
//! Field elements are stored as `u32` residues in `[0, p)`; every operation
//! reduces immediately, so products fit in `u64`. The [`Scalar`] wrapper
//! carries its modulus and refuses to mix fields; the hot paths inside the
//! crate work on raw residues through [`PrimeModulus`].

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const MAX_PRIME: u64 = (1 << 31) - 1;

/// A prime `p` with `2 <= p <= 2^31 - 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct PrimeModulus(u32);

impl PrimeModulus {
    pub fn new(p: u64) -> Result<Self> {
        if !(2..=MAX_PRIME).contains(&p) || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeModulus(p as u32))
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn reduce(self, v: u64) -> u32 {
        (v % self.0 as u64) as u32
    }

    /// Reduces a signed integer into `[0, p)`.
    #[inline]
    pub fn reduce_signed(self, v: i64) -> u32 {
        v.rem_euclid(self.0 as i64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a as u64 + b as u64;
        if s >= self.0 as u64 {
            (s - self.0 as u64) as u32
        } else {
            s as u32
        }
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            (a as u64 + self.0 as u64 - b as u64) as u32
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.0 as u64) as u32
    }

    pub fn pow(self, mut base: u32, mut exp: u64) -> u32 {
        let mut acc = 1 % self.0;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Inverse via Fermat's little theorem.
    pub fn inv(self, a: u32) -> Result<u32> {
        if a.is_multiple_of(self.0) {
            return Err(Error::ZeroInverse);
        }
        Ok(self.pow(a, self.0 as u64 - 2))
    }

    pub fn scalar(self, value: u64) -> Scalar {
        Scalar {
            value: self.reduce(value),
            modulus: self,
        }
    }
}

impl<'de> Deserialize<'de> for PrimeModulus {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let p = u64::deserialize(d)?;
        PrimeModulus::new(p).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for PrimeModulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Deterministic Miller-Rabin; the witness set is exact below 3.3 * 10^24.
fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for small in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(small) {
            return n == small;
        }
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut b: u64, mut e: u64| {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = mulmod(r, b);
            }
            b = mulmod(b, b);
            e >>= 1;
        }
        r
    };
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// An element of Z_p together with its modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Scalar {
    value: u32,
    modulus: PrimeModulus,
}

impl Scalar {
    pub fn new(value: u64, modulus: PrimeModulus) -> Self {
        modulus.scalar(value)
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn modulus(self) -> PrimeModulus {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    fn check(self, other: Scalar) -> Result<PrimeModulus> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch(self.modulus.get(), other.modulus.get()));
        }
        Ok(self.modulus)
    }

    pub fn try_add(self, other: Scalar) -> Result<Scalar> {
        let m = self.check(other)?;
        Ok(Scalar { value: m.add(self.value, other.value), modulus: m })
    }

    pub fn try_sub(self, other: Scalar) -> Result<Scalar> {
        let m = self.check(other)?;
        Ok(Scalar { value: m.sub(self.value, other.value), modulus: m })
    }

    pub fn try_mul(self, other: Scalar) -> Result<Scalar> {
        let m = self.check(other)?;
        Ok(Scalar { value: m.mul(self.value, other.value), modulus: m })
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(self) -> Scalar {
        Scalar { value: self.modulus.neg(self.value), modulus: self.modulus }
    }

    pub fn inverse(self) -> Result<Scalar> {
        Ok(Scalar { value: self.modulus.inv(self.value)?, modulus: self.modulus })
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// Returns `b` with `a * b = 1 (mod p)`.
pub fn scalar_inverse(a: Scalar) -> Result<Scalar> {
    a.inverse()
}

/// A dense row-major matrix over Z_p.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixZp {
    rows: usize,
    cols: usize,
    entries: Vec<u32>,
    modulus: PrimeModulus,
}

impl MatrixZp {
    pub fn zeros(rows: usize, cols: usize, modulus: PrimeModulus) -> Self {
        MatrixZp { rows, cols, entries: vec![0; rows * cols], modulus }
    }

    /// Builds a matrix from raw residues; values are reduced mod p.
    pub fn from_rows(modulus: PrimeModulus, rows: &[Vec<u32>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, found: row.len() });
            }
            entries.extend(row.iter().map(|&v| modulus.reduce(v as u64)));
        }
        Ok(MatrixZp { rows: rows.len(), cols, entries, modulus })
    }

    pub fn from_scalars(rows: usize, cols: usize, entries: &[Scalar]) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch { expected: rows * cols, found: entries.len() });
        }
        let modulus = entries
            .first()
            .map(|s| s.modulus())
            .ok_or_else(|| Error::Invalid("matrix needs at least one entry to fix p".into()))?;
        let mut raw = Vec::with_capacity(entries.len());
        for s in entries {
            if s.modulus() != modulus {
                return Err(Error::ModulusMismatch(modulus.get(), s.modulus().get()));
            }
            raw.push(s.value());
        }
        Ok(MatrixZp { rows, cols, entries: raw, modulus })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn modulus(&self) -> PrimeModulus {
        self.modulus
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.entries[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.entries[r * self.cols + c] = self.modulus.reduce(v as u64);
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> MatrixZp {
        let mut t = MatrixZp::zeros(self.cols, self.rows, self.modulus);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.entries[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[u32]) -> Result<Vec<u32>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: v.len() });
        }
        let m = self.modulus;
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(0, |acc, (&a, &b)| m.add(acc, m.mul(a, b)))
            })
            .collect())
    }

    pub fn mul(&self, other: &MatrixZp) -> Result<MatrixZp> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch(self.modulus.get(), other.modulus.get()));
        }
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let m = self.modulus;
        let mut out = MatrixZp::zeros(self.rows, other.cols, m);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    let idx = r * other.cols + c;
                    out.entries[idx] = m.add(out.entries[idx], m.mul(a, other.get(k, c)));
                }
            }
        }
        Ok(out)
    }

    /// Reduces in place to row echelon form; returns the pivot columns.
    ///
    /// Pivot choice is the first nonzero entry at or below the current row,
    /// scanning columns left to right.
    fn eliminate(&mut self, cols: usize) -> Vec<usize> {
        let m = self.modulus;
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..cols {
            if row == self.rows {
                break;
            }
            let Some(pr) = (row..self.rows).find(|&r| self.get(r, col) != 0) else {
                continue;
            };
            if pr != row {
                for c in 0..self.cols {
                    self.entries.swap(pr * self.cols + c, row * self.cols + c);
                }
            }
            let inv = m.inv(self.get(row, col)).expect("pivot is nonzero");
            for c in col..self.cols {
                let idx = row * self.cols + c;
                self.entries[idx] = m.mul(self.entries[idx], inv);
            }
            for r in 0..self.rows {
                if r == row {
                    continue;
                }
                let factor = self.get(r, col);
                if factor == 0 {
                    continue;
                }
                for c in col..self.cols {
                    let sub = m.mul(factor, self.get(row, c));
                    let idx = r * self.cols + c;
                    self.entries[idx] = m.sub(self.entries[idx], sub);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn inverse(&self) -> Result<MatrixZp> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch { expected: self.rows, found: self.cols });
        }
        let n = self.rows;
        let mut aug = MatrixZp::zeros(n, 2 * n, self.modulus);
        for r in 0..n {
            for c in 0..n {
                aug.entries[r * 2 * n + c] = self.get(r, c);
            }
            aug.entries[r * 2 * n + n + r] = 1;
        }
        let pivots = aug.eliminate(n);
        if pivots.len() < n {
            return Err(Error::SingularMatrix { rank: pivots.len(), dim: n });
        }
        let mut inv = MatrixZp::zeros(n, n, self.modulus);
        for r in 0..n {
            for c in 0..n {
                inv.entries[r * n + c] = aug.get(r, n + c);
            }
        }
        Ok(inv)
    }
}

/// Rank by exact Gaussian elimination.
pub fn rank(m: &MatrixZp) -> usize {
    let mut work = m.clone();
    let cols = work.cols;
    work.eliminate(cols).len()
}

/// Solves `m * x = rhs` for square invertible `m`.
pub fn solve(m: &MatrixZp, rhs: &[Scalar]) -> Result<Vec<Scalar>> {
    for s in rhs {
        if s.modulus() != m.modulus {
            return Err(Error::ModulusMismatch(m.modulus.get(), s.modulus().get()));
        }
    }
    let raw: Vec<u32> = rhs.iter().map(|s| s.value()).collect();
    Ok(solve_raw(m, &raw)?.into_iter().map(|v| m.modulus.scalar(v as u64)).collect())
}

/// [`solve`] on raw residues.
pub fn solve_raw(m: &MatrixZp, rhs: &[u32]) -> Result<Vec<u32>> {
    if m.rows != m.cols {
        return Err(Error::DimensionMismatch { expected: m.rows, found: m.cols });
    }
    if rhs.len() != m.rows {
        return Err(Error::DimensionMismatch { expected: m.rows, found: rhs.len() });
    }
    let n = m.rows;
    let mut aug = MatrixZp::zeros(n, n + 1, m.modulus);
    for (r, &b) in rhs.iter().enumerate() {
        for c in 0..n {
            aug.entries[r * (n + 1) + c] = m.get(r, c);
        }
        aug.entries[r * (n + 1) + n] = m.modulus.reduce(b as u64);
    }
    let pivots = aug.eliminate(n);
    if pivots.len() < n {
        return Err(Error::SingularMatrix { rank: pivots.len(), dim: n });
    }
    Ok((0..n).map(|r| aug.get(r, n)).collect())
}
