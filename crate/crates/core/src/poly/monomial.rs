use std::fmt;

use serde::{Deserialize, Serialize};

/// Exponent vector of a monomial; also the coordinate vector of a point.
///
/// The derived `Ord` is plain lexicographic comparison of the coordinates and
/// is used for canonical sorting of point sets and staircases. Monomial
/// orders live in [`MonomialOrder`](super::MonomialOrder).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ExponentVector(Vec<u32>);

impl ExponentVector {
    pub fn new(exponents: Vec<u32>) -> Self {
        ExponentVector(exponents)
    }

    pub fn zero(n: usize) -> Self {
        ExponentVector(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        ExponentVector(e)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    #[inline]
    pub fn get(&self, i: usize) -> u32 {
        self.0[i]
    }

    #[inline]
    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<u32> {
        self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = &u32> + '_ {
        self.0.iter()
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Coordinate-wise `self <= other`.
    pub fn divides(&self, other: &ExponentVector) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Monomial product.
    pub fn mul(&self, other: &ExponentVector) -> ExponentVector {
        debug_assert_eq!(self.len(), other.len());
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Monomial quotient `self / other`, when it exists.
    pub fn checked_div(&self, other: &ExponentVector) -> Option<ExponentVector> {
        if !other.divides(self) {
            return None;
        }
        Some(ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
    }

    /// `self - e_i`, if the i-th exponent is positive.
    pub fn predecessor(&self, i: usize) -> Option<ExponentVector> {
        if self.0[i] == 0 {
            return None;
        }
        let mut e = self.0.clone();
        e[i] -= 1;
        Some(ExponentVector(e))
    }

    pub fn successor(&self, i: usize) -> ExponentVector {
        let mut e = self.0.clone();
        e[i] += 1;
        ExponentVector(e)
    }

    pub fn without(&self, j: usize) -> ExponentVector {
        let mut e = self.0.clone();
        e.remove(j);
        ExponentVector(e)
    }
}

impl From<Vec<u32>> for ExponentVector {
    fn from(v: Vec<u32>) -> Self {
        ExponentVector(v)
    }
}

impl From<&[u32]> for ExponentVector {
    fn from(v: &[u32]) -> Self {
        ExponentVector(v.to_vec())
    }
}

impl<const N: usize> From<[u32; N]> for ExponentVector {
    fn from(v: [u32; N]) -> Self {
        ExponentVector(v.to_vec())
    }
}

impl fmt::Debug for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// All vectors of the box `[0, bound)^n` in lexicographic order.
pub fn box_vectors(n: usize, bound: u32) -> Vec<ExponentVector> {
    let total = (bound as usize).pow(n as u32);
    let mut out = Vec::with_capacity(total);
    let mut cur = vec![0u32; n];
    for _ in 0..total {
        out.push(ExponentVector(cur.clone()));
        for i in (0..n).rev() {
            cur[i] += 1;
            if cur[i] < bound {
                break;
            }
            cur[i] = 0;
        }
    }
    out
}
