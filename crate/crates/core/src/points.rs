//! Point sets in Z_p^n and staircases (order ideals).
//!
//! The same vectors serve as points and as exponent vectors: a staircase of
//! standard monomials and a staircase-shaped data set are one type family.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{rank, MatrixZp, PrimeModulus};
use crate::poly::{box_vectors, monomial_value, ExponentVector};

/// A finite set of distinct points of Z_p^n, sorted lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PointSet {
    modulus: PrimeModulus,
    n: usize,
    points: Vec<ExponentVector>,
}

fn validate(modulus: PrimeModulus, n: usize, v: &ExponentVector) -> Result<()> {
    if v.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: v.len() });
    }
    if let Some(&value) = v.iter().find(|&&c| c >= modulus.get()) {
        return Err(Error::CoordinateOutOfRange { value, p: modulus.get() });
    }
    Ok(())
}

impl PointSet {
    /// Validates coordinates and rejects duplicates.
    pub fn new(modulus: PrimeModulus, n: usize, points: Vec<ExponentVector>) -> Result<Self> {
        for v in &points {
            validate(modulus, n, v)?;
        }
        let mut points = points;
        points.sort();
        if let Some(w) = points.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicatePoint(w[0].as_slice().to_vec()));
        }
        Ok(PointSet { modulus, n, points })
    }

    pub fn from_rows(modulus: PrimeModulus, n: usize, rows: &[Vec<u32>]) -> Result<Self> {
        Self::new(modulus, n, rows.iter().map(|r| ExponentVector::from(r.as_slice())).collect())
    }

    /// Already sorted and validated.
    pub(crate) fn from_sorted_unchecked(
        modulus: PrimeModulus,
        n: usize,
        points: Vec<ExponentVector>,
    ) -> Self {
        debug_assert!(points.windows(2).all(|w| w[0] < w[1]));
        PointSet { modulus, n, points }
    }

    /// The whole space Z_p^n.
    pub fn full(modulus: PrimeModulus, n: usize) -> Self {
        PointSet { modulus, n, points: box_vectors(n, modulus.get()) }
    }

    pub fn modulus(&self) -> PrimeModulus {
        self.modulus
    }

    pub fn p(&self) -> u32 {
        self.modulus.get()
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[ExponentVector] {
        &self.points
    }

    pub fn iter(&self) -> impl Iterator<Item = &ExponentVector> + '_ {
        self.points.iter()
    }

    pub fn contains(&self, v: &ExponentVector) -> bool {
        self.points.binary_search(v).is_ok()
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        self.points.iter().map(|v| v.as_slice().to_vec()).collect()
    }

    pub fn union(&self, other: &PointSet) -> Result<PointSet> {
        self.same_space(other)?;
        let mut pts: Vec<_> = self.points.iter().chain(&other.points).cloned().collect();
        pts.sort();
        pts.dedup();
        Ok(PointSet { modulus: self.modulus, n: self.n, points: pts })
    }

    /// Z_p^n minus this set, sorted.
    pub fn complement(&self) -> PointSet {
        let points = box_vectors(self.n, self.modulus.get())
            .into_iter()
            .filter(|v| !self.contains(v))
            .collect();
        PointSet { modulus: self.modulus, n: self.n, points }
    }

    fn same_space(&self, other: &PointSet) -> Result<()> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch(self.modulus.get(), other.modulus.get()));
        }
        if self.n != other.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: other.n });
        }
        Ok(())
    }

    pub fn as_order_ideal(&self) -> Option<OrderIdealSet> {
        is_downward_closed(&self.points).then(|| OrderIdealSet {
            modulus: self.modulus,
            n: self.n,
            members: self.points.clone(),
        })
    }
}

/// Downward-closed subset of the box `[0, p)^n`, sorted lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrderIdealSet {
    modulus: PrimeModulus,
    n: usize,
    members: Vec<ExponentVector>,
}

fn is_downward_closed(sorted: &[ExponentVector]) -> bool {
    sorted.iter().all(|v| {
        (0..v.len()).all(|i| match v.predecessor(i) {
            None => true,
            Some(u) => sorted.binary_search(&u).is_ok(),
        })
    })
}

impl OrderIdealSet {
    pub fn new(modulus: PrimeModulus, n: usize, members: Vec<ExponentVector>) -> Result<Self> {
        let set = PointSet::new(modulus, n, members)?;
        set.as_order_ideal().ok_or(Error::NotDownwardClosed)
    }

    pub fn from_rows(modulus: PrimeModulus, n: usize, rows: &[Vec<u32>]) -> Result<Self> {
        Self::new(modulus, n, rows.iter().map(|r| ExponentVector::from(r.as_slice())).collect())
    }

    pub fn modulus(&self) -> PrimeModulus {
        self.modulus
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[ExponentVector] {
        &self.members
    }

    pub fn contains(&self, v: &ExponentVector) -> bool {
        self.members.binary_search(v).is_ok()
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        self.members.iter().map(|v| v.as_slice().to_vec()).collect()
    }

    /// The same vectors read as points.
    pub fn to_point_set(&self) -> PointSet {
        PointSet { modulus: self.modulus, n: self.n, points: self.members.clone() }
    }

    /// Minimal monomials outside the staircase, sorted lexicographically.
    ///
    /// These are the marked terms of any reduced basis whose standard
    /// monomials are this staircase; a corner may reach exponent p.
    pub fn corners(&self) -> Vec<ExponentVector> {
        let mut out: Vec<ExponentVector> = Vec::new();
        let mut consider = |c: ExponentVector| {
            if self.contains(&c) {
                return;
            }
            let minimal = (0..self.n).all(|i| c.predecessor(i).is_none_or(|u| self.contains(&u)));
            if minimal {
                out.push(c);
            }
        };
        if self.members.is_empty() {
            consider(ExponentVector::zero(self.n));
        }
        for u in &self.members {
            for i in 0..self.n {
                consider(u.successor(i));
            }
        }
        out.sort();
        out.dedup();
        out
    }
}

/// True iff `v`, read as exponent vectors, is downward closed.
pub fn is_staircase(v: &PointSet) -> bool {
    is_downward_closed(&v.points)
}

/// Entry `(i, j)` is the monomial `x^{lambda[j]}` evaluated at the i-th point.
pub fn evaluation_matrix(lambda: &[ExponentVector], v: &PointSet) -> Result<MatrixZp> {
    for u in lambda {
        if u.len() != v.n {
            return Err(Error::DimensionMismatch { expected: v.n, found: u.len() });
        }
    }
    let m = v.modulus;
    let rows: Vec<Vec<u32>> = v
        .points
        .iter()
        .map(|pt| lambda.iter().map(|u| monomial_value(m, u, pt.as_slice())).collect())
        .collect();
    if rows.is_empty() || lambda.is_empty() {
        return Ok(MatrixZp::zeros(v.len(), lambda.len(), m));
    }
    MatrixZp::from_rows(m, &rows)
}

/// `lambda` is basic for I(V) iff its evaluation matrix is square and invertible.
pub fn is_basic(lambda: &[ExponentVector], v: &PointSet) -> bool {
    if lambda.len() != v.len() {
        return false;
    }
    match evaluation_matrix(lambda, v) {
        Ok(x) => rank(&x) == v.len(),
        Err(_) => false,
    }
}

/// The slice `{u in lambda : u_j = i}` with coordinate `j` deleted.
pub fn layer(lambda: &OrderIdealSet, j: usize, i: u32) -> Result<OrderIdealSet> {
    if j >= lambda.n {
        return Err(Error::IndexOutOfRange { index: j, n: lambda.n });
    }
    let mut members: Vec<_> =
        lambda.members.iter().filter(|u| u.get(j) == i).map(|u| u.without(j)).collect();
    members.sort();
    Ok(OrderIdealSet { modulus: lambda.modulus, n: lambda.n - 1, members })
}

/// One plus the largest value of coordinate `j`.
pub fn height(lambda: &OrderIdealSet, j: usize) -> Result<usize> {
    if j >= lambda.n {
        return Err(Error::IndexOutOfRange { index: j, n: lambda.n });
    }
    lambda
        .members
        .iter()
        .map(|u| u.get(j) as usize + 1)
        .max()
        .ok_or(Error::EmptyStaircase)
}

/// All order ideals of size `m` in `[0, p)^n`, sorted by member list.
///
/// Reverse search: the parent of an ideal drops its lexicographically
/// largest maximal element, so each ideal is generated exactly once.
pub fn enumerate_order_ideals(modulus: PrimeModulus, n: usize, m: usize) -> Vec<OrderIdealSet> {
    let p = modulus.get();
    let capacity = (p as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if m as u128 > capacity {
        return Vec::new();
    }
    let mut out = Vec::new();
    if m == 0 {
        out.push(OrderIdealSet { modulus, n, members: Vec::new() });
        return out;
    }
    let mut current: HashSet<ExponentVector> = HashSet::new();
    current.insert(ExponentVector::zero(n));
    let mut members = vec![ExponentVector::zero(n)];
    extend(&mut current, &mut members, p, n, m, &mut out, modulus);
    out.sort();
    out
}

fn extend(
    current: &mut HashSet<ExponentVector>,
    members: &mut Vec<ExponentVector>,
    p: u32,
    n: usize,
    m: usize,
    out: &mut Vec<OrderIdealSet>,
    modulus: PrimeModulus,
) {
    if members.len() == m {
        let mut sorted = members.clone();
        sorted.sort();
        out.push(OrderIdealSet { modulus, n, members: sorted });
        return;
    }
    let mut addable: Vec<ExponentVector> = Vec::new();
    for u in members.iter() {
        for i in 0..n {
            if u.get(i) + 1 >= p {
                continue;
            }
            let c = u.successor(i);
            if current.contains(&c) {
                continue;
            }
            if (0..n).all(|k| c.predecessor(k).is_none_or(|w| current.contains(&w))) {
                addable.push(c);
            }
        }
    }
    addable.sort();
    addable.dedup();
    for c in addable {
        // c must be the lex-largest maximal element of the child
        let dominated = members.iter().any(|w| {
            *w > c && (0..n).all(|i| w.get(i) + 1 >= p || {
                let up = w.successor(i);
                !current.contains(&up) && up != c
            })
        });
        if dominated {
            continue;
        }
        current.insert(c.clone());
        members.push(c);
        extend(current, members, p, n, m, out, modulus);
        let c = members.pop().expect("pushed");
        current.remove(&c);
    }
}

/// JSON form `{"p": 3, "n": 2, "points": [[0,0],[1,0]]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointSetFile {
    pub p: u64,
    pub n: usize,
    pub points: Vec<Vec<u32>>,
}

impl PointSetFile {
    pub fn from_set(v: &PointSet) -> Self {
        PointSetFile { p: v.p() as u64, n: v.nvars(), points: v.to_rows() }
    }

    pub fn to_set(&self) -> Result<PointSet> {
        PointSet::from_rows(PrimeModulus::new(self.p)?, self.n, &self.points)
    }
}
